#pragma once

// Core domain types shared by every module: the class-to-class call matrix,
// the preprocessed token corpus, similarity matrices, point encodings,
// decompositions and metric reports. All types are immutable after
// construction and safe to read from multiple threads.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace monosplit {

/// All JSON the toolkit emits preserves insertion order.
using ordered_json = nlohmann::ordered_json;

/// Shortest round-trip decimal rendering. Every float the toolkit writes to
/// a file goes through here so that output bytes do not depend on the
/// platform's printf.
inline std::string format_double(double v) {
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// A class of the monolith: position in the call matrix plus fully
/// qualified name. Identity is by name; the index is an internal detail
/// assigned in file order.
struct ClassId {
    std::size_t index = 0;
    std::string name;

    bool operator==(const ClassId&) const = default;
};

/// Square matrix of directed class-to-class call counts. calls(i,j) is the
/// number of calls from class i to class j. Self-calls carry no inter-class
/// information, so the diagonal is zeroed at construction (the dropped total
/// is kept for loader warnings).
class CallMatrix {
public:
    CallMatrix(std::vector<std::string> names,
               const std::vector<std::vector<long long>>& rows)
        : names_(std::move(names)) {
        const std::size_t n = names_.size();
        if (rows.size() != n)
            throw std::invalid_argument("call matrix is not square");
        cells_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (names_[i].empty())
                throw std::invalid_argument("empty class name");
            if (!index_.emplace(names_[i], i).second)
                throw std::invalid_argument("duplicate class name: " + names_[i]);
            if (rows[i].size() != n)
                throw std::invalid_argument("call matrix is not square");
            for (std::size_t j = 0; j < n; ++j) {
                long long c = rows[i][j];
                if (c < 0)
                    throw std::invalid_argument("negative call count at " +
                                                names_[i]);
                if (i == j) {
                    dropped_self_calls_ += c;
                    c = 0;
                }
                cells_[i * n + j] = c;
            }
        }
        call_in_.assign(n, 0);
        call_out_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                call_out_[i] += cells_[i * n + j];
                call_in_[j] += cells_[i * n + j];
            }
    }

    std::size_t size() const { return names_.size(); }

    long long at(std::size_t i, std::size_t j) const {
        return cells_[i * size() + j];
    }

    /// Column sum: total calls received by class j.
    long long call_in(std::size_t j) const { return call_in_[j]; }

    /// Row sum: total calls issued by class i.
    long long call_out(std::size_t i) const { return call_out_[i]; }

    long long total_calls() const {
        long long t = 0;
        for (long long c : cells_) t += c;
        return t;
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    /// Total self-calls discarded when the matrix was loaded.
    long long dropped_self_calls() const { return dropped_self_calls_; }

private:
    std::vector<std::string> names_;
    std::vector<long long> cells_;
    std::vector<long long> call_in_;
    std::vector<long long> call_out_;
    std::unordered_map<std::string, std::size_t> index_;
    long long dropped_self_calls_ = 0;
};

/// Per-class bags of preprocessed word stems plus the shared vocabulary
/// (sorted distinct stems across all documents). Documents keep
/// multiplicities: term frequency needs counts.
struct TokenCorpus {
    std::vector<std::string> class_names;
    std::vector<std::map<std::string, int>> docs;  // stem -> count
    std::vector<std::string> vocabulary;           // sorted, no duplicates

    static TokenCorpus from_docs(std::vector<std::string> names,
                                 std::vector<std::map<std::string, int>> docs) {
        TokenCorpus c;
        c.class_names = std::move(names);
        c.docs = std::move(docs);
        if (c.class_names.size() != c.docs.size())
            throw std::invalid_argument("corpus names/docs size mismatch");
        std::set<std::string> vocab;
        for (const auto& d : c.docs)
            for (const auto& [stem, count] : d) {
                if (count <= 0)
                    throw std::invalid_argument("non-positive term count");
                vocab.insert(stem);
            }
        c.vocabulary.assign(vocab.begin(), vocab.end());
        return c;
    }

    std::size_t doc_count() const { return docs.size(); }

    std::optional<std::size_t> doc_index(std::string_view name) const {
        for (std::size_t i = 0; i < class_names.size(); ++i)
            if (class_names[i] == name) return i;
        return std::nullopt;
    }
};

/// Dense tf-idf weights over the corpus vocabulary, L2-normalized.
struct TfidfVector {
    std::vector<double> weights;
};

enum class SimilarityKind { structural, semantic, blended };

/// Symmetric n-by-n matrix with entries in [0,1] and a unit diagonal.
class SimilarityMatrix {
public:
    SimilarityMatrix(std::size_t n, SimilarityKind kind)
        : n_(n), kind_(kind), values_(n * n, 0.0) {
        for (std::size_t i = 0; i < n; ++i) values_[i * n + i] = 1.0;
    }

    std::size_t size() const { return n_; }
    SimilarityKind kind() const { return kind_; }

    double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

    /// Stores value for the unordered pair {i,j}.
    void set(std::size_t i, std::size_t j, double v) {
        if (i == j)
            throw std::invalid_argument("diagonal is fixed at 1");
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("similarity out of [0,1]: " +
                                        format_double(v));
        values_[i * n_ + j] = v;
        values_[j * n_ + i] = v;
    }

private:
    std::size_t n_;
    SimilarityKind kind_;
    std::vector<double> values_;
};

enum class EncodingScheme { naive, codependent };

using Point2 = std::array<double, 2>;

/// One 2-D point per class of the project, in call-matrix order. Classes
/// that could not be encoded (no callers, or no candidate sharing a caller)
/// fall back to [0,0] and are listed in `degenerate`.
struct Encoding {
    EncodingScheme scheme = EncodingScheme::naive;
    std::vector<Point2> points;
    std::vector<std::size_t> degenerate;
};

/// Reserved pseudo-service holding points a clustering run labeled as noise.
/// It is excluded from every metric.
inline constexpr std::string_view kNoiseService = "__noise__";

enum class DecompositionSource { computed, external };

/// Assignment of classes to named microservices. Computed decompositions are
/// exact partitions of the non-noise classes; external ones (loaded from a
/// file) may assign a class to several services.
struct Decomposition {
    DecompositionSource source = DecompositionSource::computed;
    std::map<std::string, std::set<std::string>> services;
    std::set<std::string> noise;

    bool operator==(const Decomposition&) const = default;

    std::size_t service_count() const { return services.size(); }

    /// Classes assigned to more than one service.
    std::vector<std::string> duplicated_classes() const {
        std::map<std::string, int> seen;
        for (const auto& [name, members] : services)
            for (const auto& c : members) ++seen[c];
        std::vector<std::string> dup;
        for (const auto& [c, count] : seen)
            if (count > 1) dup.push_back(c);
        return dup;
    }
};

/// Checks the source-dependent invariants: no empty service, and for
/// computed decompositions no duplicated class. Throws on violation.
inline void validate_decomposition(const Decomposition& d) {
    for (const auto& [name, members] : d.services) {
        if (name.empty())
            throw std::invalid_argument("empty service name");
        if (name == kNoiseService)
            throw std::invalid_argument("noise belongs in the noise list");
        if (members.empty())
            throw std::invalid_argument("empty service: " + name);
    }
    if (d.source == DecompositionSource::computed) {
        if (!d.duplicated_classes().empty())
            throw std::invalid_argument(
                "computed decomposition assigns a class twice");
        for (const auto& c : d.noise)
            for (const auto& [name, members] : d.services)
                if (members.count(c))
                    throw std::invalid_argument("class both noise and assigned: " + c);
    }
}

/// Builds a computed decomposition from per-point cluster labels (-1 = noise).
/// Cluster k becomes service "service_k".
inline Decomposition decomposition_from_labels(
    const std::vector<std::string>& names, const std::vector<int>& labels) {
    if (names.size() != labels.size())
        throw std::invalid_argument("labels/names size mismatch");
    Decomposition d;
    d.source = DecompositionSource::computed;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (labels[i] < 0)
            d.noise.insert(names[i]);
        else
            d.services["service_" + std::to_string(labels[i])].insert(names[i]);
    }
    return d;
}

enum class Neighborhood { linear5, linear9, compact9, compact13 };

inline std::string to_string(Neighborhood n) {
    switch (n) {
        case Neighborhood::linear5: return "linear5";
        case Neighborhood::linear9: return "linear9";
        case Neighborhood::compact9: return "compact9";
        case Neighborhood::compact13: return "compact13";
    }
    return "linear5";
}

inline std::optional<Neighborhood> neighborhood_from_string(std::string_view s) {
    if (s == "linear5") return Neighborhood::linear5;
    if (s == "linear9") return Neighborhood::linear9;
    if (s == "compact9") return Neighborhood::compact9;
    if (s == "compact13") return Neighborhood::compact13;
    return std::nullopt;
}

/// Tuning knobs for the clustering engines and the similarity blend.
/// Defaults follow the experimentation protocol this toolkit ships with:
/// eps 0.65, MinPts 5, alpha = beta = 0.5, 3x3 grid, linear5 neighborhood,
/// bandwidth estimated from the data when unset.
struct HyperParams {
    double eps = 0.65;
    int min_pts = 5;
    std::optional<double> bandwidth;  // unset -> median pairwise distance
    int grid_rows = 3;
    int grid_cols = 3;
    Neighborhood neighborhood = Neighborhood::linear5;
    double alpha = 0.5;
    double beta = 0.5;
    std::uint64_t seed = 0;
    int max_bmsc_iters = 50;
    int min_pts_imodes = 1;  // DBSCAN-over-iModes density requirement

    void validate() const {
        if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
        if (min_pts < 1) throw std::invalid_argument("min_pts must be >= 1");
        if (bandwidth && !(*bandwidth > 0.0))
            throw std::invalid_argument("bandwidth must be > 0");
        if (grid_rows < 1 || grid_cols < 1)
            throw std::invalid_argument("grid dimensions must be >= 1");
        if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
            throw std::invalid_argument("alpha and beta must be in [0,1]");
        if (std::abs(alpha + beta - 1.0) > 1e-12)
            throw std::invalid_argument("alpha + beta must equal 1");
        if (max_bmsc_iters < 3)
            throw std::invalid_argument("max_bmsc_iters must be >= 3");
        if (min_pts_imodes < 1)
            throw std::invalid_argument("min_pts_imodes must be >= 1");
    }
};

/// Per-service detail row of a metrics report.
struct ServiceReport {
    std::string name;
    std::size_t size = 0;
    double scoh = 0.0;          // internal cohesion mu / size^2
    std::size_t interfaces = 0; // classes called from other services
    bool extreme = false;       // size outside [5,20]
};

/// Directed inter-service call ratio (only pairs with traffic are listed).
struct PairIcp {
    std::string from;
    std::string to;
    long long calls = 0;
    double icp = 0.0;  // calls / total inter-service calls
};

/// The five migration-quality scores plus per-service and per-pair detail.
struct MetricsReport {
    double sm = 0.0;
    double icp = 0.0;
    double ifn = 0.0;
    double ned = 0.0;
    long long dup = 0;
    std::vector<ServiceReport> per_service;
    std::vector<PairIcp> per_pair_icp;
    // Aggregate ICP divides inter-service calls by all calls (intra+inter);
    // recorded here so report consumers know which convention was used.
    std::string icp_denominator = "intra+inter";
};

/// Cross-checks a call matrix against a token corpus. Returns warnings for
/// isolated classes, classes without token documents and token documents
/// without a matrix class. Fatal when the two name sets are disjoint.
inline std::vector<std::string> validate_project(const CallMatrix& calls,
                                                 const TokenCorpus& corpus) {
    std::vector<std::string> warnings;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < calls.size(); ++i) {
        if (calls.call_in(i) == 0 && calls.call_out(i) == 0)
            warnings.push_back("isolated class " + calls.name(i));
        auto doc = corpus.doc_index(calls.name(i));
        if (!doc)
            warnings.push_back("no token document for class " + calls.name(i));
        else
            ++matched;
    }
    for (const auto& doc_name : corpus.class_names)
        if (!calls.index_of(doc_name))
            warnings.push_back("unmatched token document " + doc_name);
    if (calls.size() > 0 && !corpus.class_names.empty() && matched == 0)
        throw std::runtime_error(
            "call matrix and token corpus share no class names");
    return warnings;
}

}  // namespace monosplit
