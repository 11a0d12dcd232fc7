#pragma once

// Class representations: the two 2-D point encodings (naive and
// codependent) and the structural / semantic / blended similarity matrices.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "monosplit/model.hpp"

namespace monosplit {

/// Each class i becomes [call_in(i), call_out(i)].
inline Encoding naive_encoding(const CallMatrix& calls) {
    Encoding e;
    e.scheme = EncodingScheme::naive;
    e.points.reserve(calls.size());
    for (std::size_t i = 0; i < calls.size(); ++i)
        e.points.push_back({static_cast<double>(calls.call_in(i)),
                            static_cast<double>(calls.call_out(i))});
    return e;
}

/// Encodes each class A against its most codependent partner B: the class
/// sharing the most callers with A (ties: larger call volume from the
/// common callers to the candidate, then lower index). Then
///   a = total calls from the common callers to A and B,
///   b = call_in(A) / call_in(B).
/// Classes with no callers, or no candidate sharing a caller, become [0,0]
/// and are listed as degenerate.
inline Encoding codependent_encoding(const CallMatrix& calls) {
    const std::size_t n = calls.size();
    Encoding e;
    e.scheme = EncodingScheme::codependent;
    e.points.assign(n, {0.0, 0.0});

    std::vector<std::vector<std::size_t>> callers(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t x = 0; x < n; ++x)
            if (calls.at(s, x) > 0) callers[x].push_back(s);

    for (std::size_t a = 0; a < n; ++a) {
        if (callers[a].empty()) {
            e.degenerate.push_back(a);
            continue;
        }
        bool found = false;
        std::size_t best = 0;
        std::size_t best_common = 0;
        long long best_volume = 0;
        for (std::size_t x = 0; x < n; ++x) {
            if (x == a) continue;
            std::size_t common = 0;
            long long volume = 0;  // calls from shared callers to candidate x
            for (std::size_t s : callers[a])
                if (calls.at(s, x) > 0) {
                    ++common;
                    volume += calls.at(s, x);
                }
            if (common == 0) continue;
            if (!found || common > best_common ||
                (common == best_common && volume > best_volume)) {
                found = true;
                best = x;
                best_common = common;
                best_volume = volume;
            }
        }
        if (!found) {
            e.degenerate.push_back(a);
            continue;
        }
        long long shared_calls = 0;
        for (std::size_t s : callers[a])
            if (calls.at(s, best) > 0)
                shared_calls += calls.at(s, a) + calls.at(s, best);
        e.points[a] = {static_cast<double>(shared_calls),
                       static_cast<double>(calls.call_in(a)) /
                           static_cast<double>(calls.call_in(best))};
    }
    return e;
}

enum class StructuralMode {
    symmetric_total,  // call(i,j) = calls[i][j] + calls[j][i] (default)
    literal,          // call(i,j) = calls[i][j], evaluated for i < j
};

/// Shared-call structural similarity. Three cases on the callee volumes:
/// both classes receive calls -> mean of the two normalized call ratios;
/// only one does -> single ratio; neither -> 0. Clamped to [0,1] because
/// the mutual-exclusive-callers case can exceed 1.
inline SimilarityMatrix structural_similarity(
    const CallMatrix& calls, StructuralMode mode = StructuralMode::symmetric_total) {
    const std::size_t n = calls.size();
    SimilarityMatrix sim(n, SimilarityKind::structural);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double in_i = static_cast<double>(calls.call_in(i));
            const double in_j = static_cast<double>(calls.call_in(j));
            const double call = mode == StructuralMode::symmetric_total
                                    ? static_cast<double>(calls.at(i, j) +
                                                          calls.at(j, i))
                                    : static_cast<double>(calls.at(i, j));
            double v = 0.0;
            if (in_i != 0.0 && in_j != 0.0)
                v = 0.5 * (call / in_j + call / in_i);
            else if (in_j != 0.0)
                v = call / in_j;
            else if (in_i != 0.0)
                v = call / in_i;
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            sim.set(i, j, v);
        }
    }
    return sim;
}

/// tf-idf with smoothed idf: weight(t,d) = count(t,d) * (ln((1+D)/(1+df(t))) + 1),
/// then L2 normalization per document (zero vectors stay zero). Vector axes
/// follow the corpus vocabulary order.
inline std::vector<TfidfVector> tfidf(const TokenCorpus& corpus) {
    const std::size_t docs = corpus.doc_count();
    const std::size_t terms = corpus.vocabulary.size();
    std::vector<double> idf(terms, 0.0);
    for (std::size_t t = 0; t < terms; ++t) {
        std::size_t df = 0;
        for (const auto& doc : corpus.docs)
            if (doc.count(corpus.vocabulary[t])) ++df;
        idf[t] = std::log((1.0 + static_cast<double>(docs)) /
                          (1.0 + static_cast<double>(df))) +
                 1.0;
    }
    std::vector<TfidfVector> out(docs);
    for (std::size_t d = 0; d < docs; ++d) {
        auto& w = out[d].weights;
        w.assign(terms, 0.0);
        for (std::size_t t = 0; t < terms; ++t) {
            auto it = corpus.docs[d].find(corpus.vocabulary[t]);
            if (it != corpus.docs[d].end())
                w[t] = static_cast<double>(it->second) * idf[t];
        }
        double norm_sq = 0.0;
        for (double x : w) norm_sq += x * x;
        if (norm_sq > 0.0) {
            const double norm = std::sqrt(norm_sq);
            for (double& x : w) x /= norm;
        }
    }
    return out;
}

/// Cosine similarity between tf-idf vectors; 0 when either vector is zero.
inline SimilarityMatrix semantic_similarity(
    const std::vector<TfidfVector>& vectors) {
    const std::size_t n = vectors.size();
    SimilarityMatrix sim(n, SimilarityKind::semantic);
    std::vector<double> norms(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double x : vectors[i].weights) s += x * x;
        norms[i] = std::sqrt(s);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (vectors[i].weights.size() != vectors[j].weights.size())
                throw std::invalid_argument("tf-idf vocabulary mismatch");
            double v = 0.0;
            if (norms[i] > 0.0 && norms[j] > 0.0) {
                double dot = 0.0;
                for (std::size_t t = 0; t < vectors[i].weights.size(); ++t)
                    dot += vectors[i].weights[t] * vectors[j].weights[t];
                v = dot / (norms[i] * norms[j]);
            }
            if (v < 0.0) v = 0.0;  // guard float fuzz at the boundaries
            if (v > 1.0) v = 1.0;
            sim.set(i, j, v);
        }
    }
    return sim;
}

/// CSV dump of any similarity matrix: header row and column of class names,
/// cells in shortest round-trip decimal.
inline std::string similarity_to_csv(const SimilarityMatrix& sim,
                                     const std::vector<std::string>& names) {
    if (sim.size() != names.size())
        throw std::invalid_argument("matrix/name size mismatch");
    std::string out;
    for (const auto& n : names) out += "," + n;
    out += "\n";
    for (std::size_t i = 0; i < sim.size(); ++i) {
        out += names[i];
        for (std::size_t j = 0; j < sim.size(); ++j)
            out += "," + format_double(sim.at(i, j));
        out += "\n";
    }
    return out;
}

/// Blended class similarity CS = alpha * structural + beta * semantic.
inline SimilarityMatrix class_similarity(const SimilarityMatrix& structural,
                                         const SimilarityMatrix& semantic,
                                         double alpha, double beta) {
    if (structural.size() != semantic.size())
        throw std::invalid_argument("similarity matrix dimension mismatch");
    if (std::abs(alpha + beta - 1.0) > 1e-12)
        throw std::invalid_argument("alpha + beta must equal 1");
    const std::size_t n = structural.size();
    SimilarityMatrix cs(n, SimilarityKind::blended);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = alpha * structural.at(i, j) + beta * semantic.at(i, j);
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;
            cs.set(i, j, v);
        }
    return cs;
}

}  // namespace monosplit
