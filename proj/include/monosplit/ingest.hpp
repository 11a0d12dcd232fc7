#pragma once

// Input loading and token preprocessing: call-matrix CSV/JSON readers, the
// raw token file reader, the camelCase -> stopword -> stemmer pipeline and
// the JSON serialization of corpora and decompositions.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monosplit/model.hpp"
#include "monosplit/porter.hpp"
#include "monosplit/stopwords.hpp"

namespace monosplit {

namespace ingest_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

inline std::vector<std::string> split_on(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline long long parse_count(const std::string& field, const std::string& path,
                             const std::string& row, const std::string& col) {
    const std::string t = trim(field);
    long long value = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw std::runtime_error(path + ": cell (" + row + ", " + col +
                                 ") is not an integer: '" + field + "'");
    return value;
}

}  // namespace ingest_detail

/// Reads a call matrix from CSV. Layout: header row of class names (first
/// cell blank or a caption), then one row per class whose first field is
/// the class name. Row order must match the header.
inline CallMatrix load_calls_csv(const std::string& path) {
    using namespace ingest_detail;
    const auto lines = split_lines(read_file(path));
    if (lines.size() < 2)
        throw std::runtime_error(path + ": no classes");
    auto header = split_on(lines[0], ',');
    std::vector<std::string> names;
    for (std::size_t i = 1; i < header.size(); ++i) {
        std::string n = trim(header[i]);
        if (n.empty())
            throw std::runtime_error(path + ": empty class name in header");
        names.push_back(std::move(n));
    }
    const std::size_t n = names.size();
    if (lines.size() - 1 != n)
        throw std::runtime_error(path + ": expected " + std::to_string(n) +
                                 " data rows, found " +
                                 std::to_string(lines.size() - 1));
    std::vector<std::vector<long long>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto fields = split_on(lines[i + 1], ',');
        if (fields.size() != n + 1)
            throw std::runtime_error(path + ": row " + std::to_string(i + 2) +
                                     " has " + std::to_string(fields.size()) +
                                     " fields, expected " +
                                     std::to_string(n + 1));
        if (trim(fields[0]) != names[i])
            throw std::runtime_error(path + ": row label '" + trim(fields[0]) +
                                     "' does not match header order ('" +
                                     names[i] + "' expected)");
        rows[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            rows[i].push_back(parse_count(fields[j + 1], path, names[i], names[j]));
    }
    return CallMatrix(std::move(names), rows);
}

/// JSON form of the call matrix: {"classes": [...], "matrix": [[...], ...]}.
inline CallMatrix load_calls_json(const std::string& path) {
    using namespace ingest_detail;
    ordered_json j;
    try {
        j = ordered_json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (!j.contains("classes") || !j.contains("matrix"))
        throw std::runtime_error(path + ": expected keys 'classes' and 'matrix'");
    std::vector<std::string> names = j["classes"].get<std::vector<std::string>>();
    std::vector<std::vector<long long>> rows =
        j["matrix"].get<std::vector<std::vector<long long>>>();
    return CallMatrix(std::move(names), rows);
}

/// Loads a matrix by extension: .json -> JSON, anything else -> CSV.
inline CallMatrix load_calls(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return load_calls_json(path);
    return load_calls_csv(path);
}

/// Raw (unprocessed) token rows: one class with its identifier words.
struct RawTokenFile {
    std::vector<std::string> class_names;
    std::vector<std::vector<std::string>> words;
};

/// Reads tokens.csv: each line "ClassName,word1;word2;...". Empty word
/// fields are skipped.
inline RawTokenFile load_tokens_csv(const std::string& path) {
    using namespace ingest_detail;
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw std::runtime_error(path + ": no classes");
    RawTokenFile raw;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        auto fields = split_on(lines[li], ',');
        std::string name = trim(fields[0]);
        if (name.empty())
            throw std::runtime_error(path + ": line " + std::to_string(li + 1) +
                                     ": empty class name");
        std::vector<std::string> words;
        for (std::size_t f = 1; f < fields.size(); ++f)
            for (const auto& w : split_on(fields[f], ';')) {
                std::string t = trim(w);
                if (!t.empty()) words.push_back(std::move(t));
            }
        raw.class_names.push_back(std::move(name));
        raw.words.push_back(std::move(words));
    }
    if (raw.class_names.empty()) throw std::runtime_error(path + ": no classes");
    return raw;
}

/// Splits an identifier into lowercase words: boundaries at lower->upper
/// transitions, underscores and digits (digits are dropped). An uppercase
/// acronym run followed by a lowercase letter splits before the run's last
/// capital, so parseHTTPResponse -> [parse, http, response].
inline std::vector<std::string> split_camel_case(const std::string& word) {
    std::vector<std::string> out;
    std::string run;
    auto is_up = [](char c) { return c >= 'A' && c <= 'Z'; };
    auto is_low = [](char c) { return c >= 'a' && c <= 'z'; };
    auto flush_run = [&] {
        if (run.empty()) return;
        std::size_t start = 0;
        for (std::size_t i = 1; i < run.size(); ++i) {
            const bool camel = is_low(run[i - 1]) && is_up(run[i]);
            const bool acronym_end = is_up(run[i - 1]) && is_up(run[i]) &&
                                     i + 1 < run.size() && is_low(run[i + 1]);
            if (camel || acronym_end) {
                out.push_back(run.substr(start, i - start));
                start = i;
            }
        }
        out.push_back(run.substr(start));
        run.clear();
    };
    for (char c : word) {
        if (is_up(c) || is_low(c))
            run.push_back(c);
        else
            flush_run();  // digits, underscores and punctuation separate
    }
    flush_run();
    for (auto& piece : out)
        for (char& c : piece)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

/// Drops stopwords (embedded list) and single-character tokens.
inline std::vector<std::string> remove_stopwords(
    const std::vector<std::string>& words) {
    std::vector<std::string> kept;
    for (const auto& w : words)
        if (!is_stopword(w)) kept.push_back(w);
    return kept;
}

/// Porter reduction of one lowercase word.
inline std::string stem(const std::string& word) { return porter_stem(word); }

/// Runs the full preprocessing pipeline per class: camelCase splitting,
/// stopword removal, stemming. Classes whose documents end up empty are
/// reported in `warnings` when provided.
inline TokenCorpus build_corpus(const RawTokenFile& raw,
                                std::vector<std::string>* warnings = nullptr) {
    std::set<std::string> seen;
    for (const auto& n : raw.class_names)
        if (!seen.insert(n).second)
            throw std::runtime_error("duplicate class row: " + n);
    std::vector<std::map<std::string, int>> docs(raw.class_names.size());
    for (std::size_t i = 0; i < raw.class_names.size(); ++i) {
        for (const auto& word : raw.words[i])
            for (const auto& piece : remove_stopwords(split_camel_case(word)))
                ++docs[i][porter_stem(piece)];
        if (docs[i].empty() && warnings)
            warnings->push_back("class " + raw.class_names[i] +
                                " has no tokens after preprocessing");
    }
    return TokenCorpus::from_docs(raw.class_names, std::move(docs));
}

/// Corpus serialization: {"docs": {class: [stems...]}, "vocabulary": [...]}.
/// Stems repeat to keep multiplicities; arrays are sorted for stable bytes.
inline ordered_json corpus_to_json(const TokenCorpus& corpus) {
    ordered_json j;
    j["docs"] = ordered_json::object();
    for (std::size_t i = 0; i < corpus.class_names.size(); ++i) {
        ordered_json arr = ordered_json::array();
        for (const auto& [stem_word, count] : corpus.docs[i])
            for (int k = 0; k < count; ++k) arr.push_back(stem_word);
        j["docs"][corpus.class_names[i]] = std::move(arr);
    }
    j["vocabulary"] = corpus.vocabulary;
    return j;
}

inline TokenCorpus corpus_from_json(const ordered_json& j) {
    if (!j.contains("docs"))
        throw std::runtime_error("corpus JSON missing 'docs'");
    std::vector<std::string> names;
    std::vector<std::map<std::string, int>> docs;
    for (const auto& [name, arr] : j["docs"].items()) {
        names.push_back(name);
        std::map<std::string, int> doc;
        for (const auto& s : arr) ++doc[s.get<std::string>()];
        docs.push_back(std::move(doc));
    }
    return TokenCorpus::from_docs(std::move(names), std::move(docs));
}

inline void save_corpus_json(const TokenCorpus& corpus,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << corpus_to_json(corpus).dump(2) << "\n";
}

inline TokenCorpus load_corpus_json(const std::string& path) {
    using namespace ingest_detail;
    try {
        return corpus_from_json(ordered_json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

/// Decomposition serialization:
/// {"source": "computed"|"external", "services": {name: [classes]},
///  "noise": [classes]}. All arrays sorted.
inline ordered_json decomposition_to_json(const Decomposition& d) {
    ordered_json j;
    j["source"] =
        d.source == DecompositionSource::computed ? "computed" : "external";
    j["services"] = ordered_json::object();
    for (const auto& [name, members] : d.services)
        j["services"][name] = std::vector<std::string>(members.begin(),
                                                       members.end());
    j["noise"] = std::vector<std::string>(d.noise.begin(), d.noise.end());
    return j;
}

inline Decomposition decomposition_from_json(const ordered_json& j) {
    Decomposition d;
    const std::string source = j.value("source", "external");
    if (source == "computed")
        d.source = DecompositionSource::computed;
    else if (source == "external")
        d.source = DecompositionSource::external;
    else
        throw std::runtime_error("unknown decomposition source: " + source);
    if (!j.contains("services"))
        throw std::runtime_error("decomposition JSON missing 'services'");
    for (const auto& [name, members] : j["services"].items()) {
        auto& svc = d.services[name];
        for (const auto& c : members) svc.insert(c.get<std::string>());
    }
    if (j.contains("noise"))
        for (const auto& c : j["noise"]) d.noise.insert(c.get<std::string>());
    validate_decomposition(d);
    return d;
}

inline void save_decomposition_json(const Decomposition& d,
                                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << decomposition_to_json(d).dump(2) << "\n";
}

inline Decomposition load_decomposition_json(const std::string& path) {
    using namespace ingest_detail;
    try {
        return decomposition_from_json(ordered_json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace monosplit
