#pragma once

// Embedded stopword list used by the token preprocessing pipeline. The list
// is versioned with the code on purpose: identifier corpora must preprocess
// identically across machines and releases.
//
// Three groups: classic English stopwords (Snowball list, apostrophe forms
// omitted because identifier tokens never contain apostrophes), Java
// reserved words plus literals, and accessor verbs that dominate Java
// method names without carrying domain meaning. Single-character tokens are
// filtered by rule, not by list.

#include <string_view>
#include <unordered_set>

namespace monosplit {

namespace stopword_detail {

inline constexpr std::string_view kEnglish[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an",
    "and", "any", "are", "as", "at", "be", "because", "been", "before",
    "being", "below", "between", "both", "but", "by", "can", "did", "do",
    "does", "doing", "down", "during", "each", "few", "for", "from",
    "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "herself", "him", "himself", "his", "how", "i", "if", "in", "into",
    "is", "it", "its", "itself", "just", "me", "more", "most", "my",
    "myself", "no", "nor", "not", "now", "of", "off", "on", "once", "only",
    "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same",
    "she", "should", "so", "some", "such", "than", "that", "the", "their",
    "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "very",
    "was", "we", "were", "what", "when", "where", "which", "while", "who",
    "whom", "why", "will", "with", "you", "your", "yours", "yourself",
    "yourselves",
};

inline constexpr std::string_view kJavaKeywords[] = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch",
    "char", "class", "const", "continue", "default", "do", "double",
    "else", "enum", "extends", "false", "final", "finally", "float", "for",
    "goto", "if", "implements", "import", "instanceof", "int", "interface",
    "long", "native", "new", "null", "package", "private", "protected",
    "public", "return", "short", "static", "strictfp", "super", "switch",
    "synchronized", "this", "throw", "throws", "transient", "true", "try",
    "void", "volatile", "while",
};

inline constexpr std::string_view kAccessorVerbs[] = {
    "get", "set", "is",
};

}  // namespace stopword_detail

/// True when `word` (lowercase) must be dropped from a token document.
inline bool is_stopword(std::string_view word) {
    static const std::unordered_set<std::string_view> all = [] {
        std::unordered_set<std::string_view> s;
        for (auto w : stopword_detail::kEnglish) s.insert(w);
        for (auto w : stopword_detail::kJavaKeywords) s.insert(w);
        for (auto w : stopword_detail::kAccessorVerbs) s.insert(w);
        return s;
    }();
    if (word.size() <= 1) return true;
    return all.count(word) > 0;
}

}  // namespace monosplit
