#include <catch_amalgamated.hpp>

#include "monosplit/metrics.hpp"
#include "test_util.hpp"

using namespace monosplit;

namespace {

/// a<->b inside s1, c->d inside s2, a->c and b->d crossing.
CallMatrix worked_example() {
    return CallMatrix({"a", "b", "c", "d"}, {{0, 1, 1, 0},
                                             {1, 0, 0, 1},
                                             {0, 0, 0, 1},
                                             {0, 0, 0, 0}});
}

Decomposition two_services() {
    Decomposition d;
    d.services["s1"] = {"a", "b"};
    d.services["s2"] = {"c", "d"};
    return d;
}

}  // namespace

TEST_CASE("structural modularity on the worked example") {
    SmDetail r = structural_modularity(worked_example(), two_services());
    // scoh: 2/4 and 1/4; scop: 2 crossing calls / (2*2*2)
    REQUIRE(r.scoh.size() == 2);
    CHECK(r.scoh[0] == 0.5);
    CHECK(r.scoh[1] == 0.25);
    REQUIRE(r.scop.size() == 1);
    CHECK(std::get<2>(r.scop[0]) == 0.25);
    CHECK(r.sm == 0.125);
}

TEST_CASE("structural modularity degenerate shapes") {
    CallMatrix calls = worked_example();

    Decomposition one;
    one.services["all"] = {"a", "b", "c", "d"};
    // single service: no pairs, SM equals its cohesion 5/16
    CHECK(structural_modularity(calls, one).sm == 5.0 / 16.0);

    CallMatrix silent({"a", "b", "c", "d"},
                      {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    CHECK(structural_modularity(silent, two_services()).sm == 0.0);

    Decomposition unknown;
    unknown.services["s"] = {"zz"};
    CHECK_THROWS_WITH(structural_modularity(calls, unknown),
                      "unknown class: zz");
    CHECK_THROWS_WITH(structural_modularity(calls, Decomposition{}),
                      "decomposition has no services");
}

TEST_CASE("icp on the worked example") {
    IcpDetail r = icp(worked_example(), two_services());
    CHECK(r.intra == 3);
    CHECK(r.inter == 2);
    CHECK(r.aggregate == 0.4);
    // only the pair with traffic shows up; its share is of inter calls only
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].from == "s1");
    CHECK(r.pairs[0].to == "s2");
    CHECK(r.pairs[0].calls == 2);
    CHECK(r.pairs[0].icp == 1.0);
}

TEST_CASE("icp extremes") {
    CallMatrix calls = worked_example();

    Decomposition one;
    one.services["all"] = {"a", "b", "c", "d"};
    IcpDetail intra_only = icp(calls, one);
    CHECK(intra_only.aggregate == 0.0);
    CHECK(intra_only.inter == 0);
    CHECK(intra_only.pairs.empty());

    Decomposition singletons;
    for (const auto& n : calls.names()) singletons.services["s_" + n] = {n};
    IcpDetail inter_only = icp(calls, singletons);
    CHECK(inter_only.aggregate == 1.0);
    CHECK(inter_only.intra == 0);
    CHECK(inter_only.pairs.size() == 5);
    for (const auto& p : inter_only.pairs) CHECK(p.icp == 0.2);

    CallMatrix silent({"a", "b"}, {{0, 0}, {0, 0}});
    Decomposition d;
    d.services["s1"] = {"a"};
    d.services["s2"] = {"b"};
    CHECK(icp(silent, d).aggregate == 0.0);
}

TEST_CASE("icp with three intra and one inter call") {
    CallMatrix calls({"a", "b", "c", "d"},
                     {{0, 2, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    IcpDetail r = icp(calls, two_services());
    CHECK(r.aggregate == 0.25);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].icp == 1.0);
}

TEST_CASE("ifn counts classes called from other services") {
    // c->a makes a an interface of s1; a->c and b->d expose both of s2
    CallMatrix calls({"a", "b", "c", "d"},
                     {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 0}});
    IfnDetail r = ifn(calls, two_services());
    CHECK(r.per_service == std::vector<std::size_t>{1, 2});
    CHECK(r.mean == 1.5);

    // a class is not an interface of a service nobody outside calls into
    CallMatrix quiet({"a", "b", "c", "d"},
                     {{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
    CHECK(ifn(quiet, two_services()).mean == 0.0);
}

TEST_CASE("ifn sees duplicated classes from every seat") {
    // u sits in both services; its call into x counts as crossing into P
    CallMatrix calls({"x", "u", "y"}, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
    Decomposition d;
    d.services["P"] = {"x", "u"};
    d.services["Q"] = {"u", "y"};
    IfnDetail r = ifn(calls, d);
    CHECK(r.per_service == std::vector<std::size_t>{1, 0});
    CHECK(r.mean == 0.5);
    CHECK(dup(d) == 1);
}

TEST_CASE("ned measures extreme service sizes, bounds inclusive") {
    auto sized = [](std::initializer_list<int> sizes) {
        Decomposition d;
        int next = 0;
        int id = 0;
        for (int s : sizes) {
            auto& svc = d.services["s" + std::to_string(id++)];
            for (int k = 0; k < s; ++k)
                svc.insert("c" + std::to_string(next++));
        }
        return d;
    };
    CHECK(ned(sized({5, 20, 4})) == 1.0 - 2.0 / 3.0);
    CHECK(ned(sized({4, 5, 20, 21})) == 0.5);
    CHECK(ned(sized({10})) == 0.0);
    CHECK(ned(sized({1})) == 1.0);
    CHECK_THROWS_AS(ned(Decomposition{}), std::invalid_argument);
}

TEST_CASE("evaluate assembles the full report") {
    MetricsReport r = evaluate(worked_example(), two_services());
    CHECK(r.sm == 0.125);
    CHECK(r.icp == 0.4);
    CHECK(r.ifn == 1.0);  // only c and d are called from s1
    CHECK(r.ned == 1.0);  // two services of size 2, both extreme
    CHECK(r.dup == 0);

    REQUIRE(r.per_service.size() == 2);
    CHECK(r.per_service[0].name == "s1");
    CHECK(r.per_service[0].size == 2);
    CHECK(r.per_service[0].scoh == 0.5);
    CHECK(r.per_service[0].interfaces == 0);
    CHECK(r.per_service[0].extreme);
    CHECK(r.per_service[1].interfaces == 2);

    REQUIRE(r.per_pair_icp.size() == 1);
    CHECK(r.per_pair_icp[0].calls == 2);
}

TEST_CASE("noise and unassigned classes stay out of every sum") {
    CallMatrix calls({"a", "b", "c", "d", "e"}, {{0, 1, 1, 0, 0},
                                                 {1, 0, 0, 1, 0},
                                                 {0, 0, 0, 1, 0},
                                                 {0, 0, 0, 0, 0},
                                                 {9, 9, 9, 9, 0}});
    Decomposition with_noise = two_services();
    with_noise.noise = {"e"};
    MetricsReport r = evaluate(calls, with_noise);
    MetricsReport base = evaluate(worked_example(), two_services());
    CHECK(r.sm == base.sm);
    CHECK(r.icp == base.icp);
    CHECK(r.ifn == base.ifn);

    // the same holds when the class is simply absent from the decomposition
    MetricsReport r2 = evaluate(calls, two_services());
    CHECK(r2.sm == base.sm);
    CHECK(r2.ifn == base.ifn);
}

TEST_CASE("evaluate rejects malformed decompositions") {
    Decomposition overlap = two_services();
    overlap.noise = {"a"};
    CHECK_THROWS_AS(evaluate(worked_example(), overlap), std::invalid_argument);

    Decomposition empty_service = two_services();
    empty_service.services["s3"] = {};
    CHECK_THROWS_AS(evaluate(worked_example(), empty_service),
                    std::invalid_argument);
}

TEST_CASE("metrics serialize to csv and json") {
    MetricsReport r = evaluate(worked_example(), two_services());
    CHECK(metrics_to_csv(r) ==
          "metric,value\n"
          "sm,0.125\n"
          "icp,0.4\n"
          "ifn,1\n"
          "ned,1\n"
          "dup,0\n");

    ordered_json j = metrics_to_json(r);
    CHECK(j["sm"] == 0.125);
    CHECK(j["icp"] == 0.4);
    CHECK(j["icp_denominator"] == "intra+inter");
    REQUIRE(j["services"].size() == 2);
    CHECK(j["services"][0]["name"] == "s1");
    CHECK(j["services"][0]["extreme"] == true);
    REQUIRE(j["pairs"].size() == 1);
    CHECK(j["pairs"][0]["from"] == "s1");
    CHECK(j["pairs"][0]["icp"] == 1.0);
    // key order is pinned
    CHECK(j.dump().substr(0, 36) ==
          R"({"sm":0.125,"icp":0.4,"ifn":1.0,"ned)");
}
