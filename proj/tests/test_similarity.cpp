#include <catch_amalgamated.hpp>

#include "monosplit/ingest.hpp"
#include "monosplit/similarity.hpp"
#include "test_util.hpp"

using namespace monosplit;
using Catch::Matchers::WithinAbs;

TEST_CASE("naive encoding is [call_in, call_out]") {
    CallMatrix m({"A", "B"}, {{0, 3}, {1, 0}});
    Encoding e = naive_encoding(m);
    CHECK(e.points[0] == Point2{1.0, 3.0});
    CHECK(e.points[1] == Point2{3.0, 1.0});
    CHECK(e.degenerate.empty());

    CallMatrix chain({"A", "B", "C"}, {{0, 2, 0}, {0, 0, 2}, {0, 0, 0}});
    CHECK(naive_encoding(chain).points[1] == Point2{2.0, 2.0});

    CallMatrix isolated({"A"}, {{0}});
    CHECK(naive_encoding(isolated).points[0] == Point2{0.0, 0.0});
}

TEST_CASE("codependent encoding follows the shared-caller partner rule") {
    SECTION("two classes called twice by one shared caller") {
        CallMatrix m({"S", "X", "Y"}, {{0, 2, 2}, {0, 0, 0}, {0, 0, 0}});
        Encoding e = codependent_encoding(m);
        CHECK(e.points[1] == Point2{4.0, 1.0});
        CHECK(e.points[2] == Point2{4.0, 1.0});
        // S itself has no callers
        CHECK(e.points[0] == Point2{0.0, 0.0});
        CHECK(e.degenerate == std::vector<std::size_t>{0});
    }
    SECTION("partner is the class sharing the most callers") {
        // A called by B(5), C(3), D(1); B called by C(2) and D(1)
        CallMatrix m({"A", "B", "C", "D"}, {{0, 0, 0, 0},
                                            {5, 0, 0, 0},
                                            {3, 2, 0, 0},
                                            {1, 1, 0, 0}});
        Encoding e = codependent_encoding(m);
        // common callers of A and B = {C, D}: a = (3+2)+(1+1), b = 9/3
        CHECK(e.points[0] == Point2{7.0, 3.0});
    }
    SECTION("volume breaks common-caller ties, then index") {
        CallMatrix vol({"S", "X", "Y", "Z"}, {{0, 1, 2, 3},
                                              {0, 0, 0, 0},
                                              {0, 0, 0, 0},
                                              {0, 0, 0, 0}});
        Encoding e = codependent_encoding(vol);
        // X's candidates share caller S; Z wins on volume 3 > 2
        CHECK(e.points[1] == Point2{4.0, 1.0 / 3.0});

        CallMatrix tie({"S", "X", "Y", "Z"}, {{0, 2, 2, 2},
                                              {0, 0, 0, 0},
                                              {0, 0, 0, 0},
                                              {0, 0, 0, 0}});
        // Y and Z tie on count and volume; lower index Y partners X
        CHECK(codependent_encoding(tie).points[1] == Point2{4.0, 1.0});
    }
    SECTION("single class is degenerate") {
        CallMatrix one({"A"}, {{0}});
        Encoding e = codependent_encoding(one);
        CHECK(e.points[0] == Point2{0.0, 0.0});
        CHECK(e.degenerate == std::vector<std::size_t>{0});
    }
}

TEST_CASE("codependent encoding of the mini fixture matches the hand trace") {
    CallMatrix m = load_calls_csv(testutil::fixture("mini/calls.csv"));
    Encoding e = codependent_encoding(m);
    auto at = [&](const char* name) { return e.points[*m.index_of(name)]; };
    // controllers and the ledger leaf have no shared callers: origin
    CHECK(at("AccountController") == Point2{0.0, 0.0});
    CHECK(at("OrderController") == Point2{0.0, 0.0});
    CHECK(at("BillingController") == Point2{0.0, 0.0});
    CHECK(at("BillingLedger") == Point2{0.0, 0.0});
    // every Account worker pairs through the controller with volume 1
    for (const char* worker : {"AccountService", "AccountRepository",
                               "AccountValidator", "AccountMapper",
                               "AccountCache"})
        CHECK(at(worker) == Point2{2.0, 1.0});
    // Order workers see doubled volumes
    for (const char* worker :
         {"OrderService", "OrderRepository", "OrderMapper"})
        CHECK(at(worker) == Point2{4.0, 1.0});
    CHECK(e.degenerate == std::vector<std::size_t>{0, 6, 10, 11});
}

TEST_CASE("structural similarity cases and clamping") {
    SECTION("one-sided volume uses the single ratio") {
        // A->B 2, C->B 2: pair (A,B) has call_in(A)=0, call_in(B)=4
        CallMatrix m({"A", "B", "C"}, {{0, 2, 0}, {0, 0, 0}, {0, 2, 0}});
        SimilarityMatrix s = structural_similarity(m);
        CHECK(s.at(0, 1) == 0.5);
    }
    SECTION("independent classes score 0") {
        CallMatrix m({"A", "B", "C"}, {{0, 0, 2}, {0, 0, 2}, {0, 0, 0}});
        CHECK(structural_similarity(m).at(0, 1) == 0.0);
    }
    SECTION("mutual exclusive callers clamp to 1") {
        CallMatrix m({"A", "B"}, {{0, 1}, {1, 0}});
        CHECK(structural_similarity(m).at(0, 1) == 1.0);
    }
    SECTION("literal mode reads only the i->j direction") {
        CallMatrix m({"A", "B"}, {{0, 1}, {2, 0}});
        // symmetric total: 0.5*(3/1 + 3/2) clamps to 1
        CHECK(structural_similarity(m).at(0, 1) == 1.0);
        // literal: call = calls[A][B] = 1, 0.5*(1/1 + 1/2)
        CHECK(structural_similarity(m, StructuralMode::literal).at(0, 1) ==
              0.75);
    }
    SECTION("matrix is symmetric with unit diagonal") {
        CallMatrix m({"A", "B", "C"}, {{0, 3, 1}, {0, 0, 2}, {4, 0, 0}});
        SimilarityMatrix s = structural_similarity(m);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(s.at(i, i) == 1.0);
            for (std::size_t j = 0; j < 3; ++j) CHECK(s.at(i, j) == s.at(j, i));
        }
    }
}

TEST_CASE("tfidf matches the frozen reference table") {
    SECTION("two documents") {
        auto corpus = TokenCorpus::from_docs(
            {"d0", "d1"}, {{{"a", 2}, {"b", 1}}, {{"b", 1}}});
        auto v = tfidf(corpus);
        REQUIRE(corpus.vocabulary == std::vector<std::string>{"a", "b"});
        CHECK_THAT(v[0].weights[0],
                   WithinAbs(0.94215562466323588, 1e-12));
        CHECK_THAT(v[0].weights[1],
                   WithinAbs(0.33517574332792605, 1e-12));
        CHECK(v[1].weights[0] == 0.0);
        CHECK(v[1].weights[1] == 1.0);

        SimilarityMatrix sem = semantic_similarity(v);
        CHECK_THAT(sem.at(0, 1), WithinAbs(0.33517574332792605, 1e-12));
    }
    SECTION("three documents") {
        auto corpus = TokenCorpus::from_docs(
            {"d0", "d1", "d2"},
            {{{"account", 2}, {"balanc", 1}},
             {{"order", 1}, {"balanc", 1}},
             {{"order", 2}, {"ship", 1}}});
        auto v = tfidf(corpus);
        REQUIRE(corpus.vocabulary ==
                std::vector<std::string>{"account", "balanc", "order", "ship"});
        const double expected[3][4] = {
            {0.93470196362143265, 0.35543246785041743, 0, 0},
            {0, 0.70710678118654757, 0.70710678118654757, 0},
            {0, 0, 0.83559154194491758, 0.54935123102630334}};
        for (std::size_t d = 0; d < 3; ++d)
            for (std::size_t t = 0; t < 4; ++t) {
                INFO("doc " << d << " term " << t);
                CHECK_THAT(v[d].weights[t], WithinAbs(expected[d][t], 1e-12));
            }
    }
    SECTION("rare terms outrank ubiquitous ones") {
        auto corpus = TokenCorpus::from_docs(
            {"d0", "d1", "d2"},
            {{{"common", 1}, {"rare", 1}}, {{"common", 1}}, {{"common", 1}}});
        auto v = tfidf(corpus);
        CHECK(v[0].weights[1] > v[0].weights[0]);  // rare > common in d0
    }
    SECTION("empty document stays a zero vector") {
        auto corpus = TokenCorpus::from_docs({"d0", "d1"},
                                             {{{"x", 1}}, {}});
        auto v = tfidf(corpus);
        CHECK(v[1].weights == std::vector<double>{0.0});
    }
}

TEST_CASE("semantic similarity is cosine with zero-vector guard") {
    std::vector<TfidfVector> vs(3);
    vs[0].weights = {1.0, 1.0, 0.0};
    vs[1].weights = {1.0, 0.0, 1.0};
    vs[2].weights = {0.0, 0.0, 0.0};
    SimilarityMatrix s = semantic_similarity(vs);
    CHECK_THAT(s.at(0, 1), WithinAbs(0.5, 1e-12));
    CHECK(s.at(0, 2) == 0.0);
    CHECK(s.at(2, 2) == 1.0);  // diagonal stays 1 by definition

    std::vector<TfidfVector> same(2);
    same[0].weights = {1.0};
    same[1].weights = {1.0};
    CHECK(semantic_similarity(same).at(0, 1) == 1.0);

    std::vector<TfidfVector> disjoint(2);
    disjoint[0].weights = {1.0, 0.0};
    disjoint[1].weights = {0.0, 1.0};
    CHECK(semantic_similarity(disjoint).at(0, 1) == 0.0);
}

TEST_CASE("class similarity blends the two matrices") {
    SimilarityMatrix str(2, SimilarityKind::structural);
    str.set(0, 1, 0.4);
    SimilarityMatrix sem(2, SimilarityKind::semantic);
    sem.set(0, 1, 0.6);
    SimilarityMatrix cs = class_similarity(str, sem, 0.5, 0.5);
    CHECK(cs.at(0, 1) == 0.5);
    CHECK(cs.kind() == SimilarityKind::blended);

    CHECK(class_similarity(str, sem, 1.0, 0.0).at(0, 1) == 0.4);
    CHECK_THROWS_AS(class_similarity(str, sem, 0.5, 0.6),
                    std::invalid_argument);
    SimilarityMatrix other(3, SimilarityKind::semantic);
    CHECK_THROWS_AS(class_similarity(str, other, 0.5, 0.5),
                    std::invalid_argument);
}

TEST_CASE("similarity CSV dump has name headers and stable cells") {
    SimilarityMatrix s(2, SimilarityKind::blended);
    s.set(0, 1, 0.25);
    CHECK(similarity_to_csv(s, {"A", "B"}) ==
          ",A,B\nA,1,0.25\nB,0.25,1\n");
}
