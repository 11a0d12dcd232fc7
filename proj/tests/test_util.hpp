#pragma once

// Shared test helpers: fixture paths and tiny builders.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "monosplit/model.hpp"

namespace testutil {

inline std::string fixture(const std::string& rel) {
    return std::string(MONOSPLIT_FIXTURE_DIR) + "/" + rel;
}

inline std::string golden(const std::string& rel) {
    return std::string(MONOSPLIT_GOLDEN_DIR) + "/" + rel;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

/// Shorthand matrix builder for hand-written cases.
inline monosplit::CallMatrix matrix(
    std::vector<std::string> names,
    std::vector<std::vector<long long>> rows) {
    return monosplit::CallMatrix(std::move(names), rows);
}

/// Names a, b, c, ... for n synthetic classes.
inline std::vector<std::string> letters(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("c" + std::to_string(i));
    return names;
}

}  // namespace testutil
