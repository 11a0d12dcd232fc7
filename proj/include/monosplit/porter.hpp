#pragma once

// Porter's suffix-stripping stemmer, original 1980 rule set. Input must be
// lowercase ASCII letters; words of length <= 2 are returned unchanged.
//
// Each step scans its rule list for the longest matching suffix and then
// tests that rule's condition. A matched suffix whose condition fails ends
// the step without trying shorter suffixes.

#include <string>
#include <string_view>

namespace monosplit {

namespace porter_detail {

inline bool is_consonant(const std::string& w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            // y is a consonant at the start of a word and after a vowel.
            return i == 0 ? true : !is_consonant(w, i - 1);
        default:
            return true;
    }
}

/// Number of vowel-consonant sequences: [C](VC)^m[V].
inline int measure(const std::string& w) {
    int m = 0;
    std::size_t i = 0;
    const std::size_t n = w.size();
    while (i < n && is_consonant(w, i)) ++i;
    while (i < n) {
        while (i < n && !is_consonant(w, i)) ++i;
        if (i >= n) break;
        while (i < n && is_consonant(w, i)) ++i;
        ++m;
    }
    return m;
}

inline bool has_vowel(const std::string& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_consonant(w, i)) return true;
    return false;
}

inline bool ends_double_consonant(const std::string& w) {
    const std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

/// consonant-vowel-consonant ending where the final consonant is not
/// w, x or y. Used to decide whether a final e must be restored.
inline bool ends_cvc(const std::string& w) {
    const std::size_t n = w.size();
    if (n < 3) return false;
    if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) ||
        !is_consonant(w, n - 1))
        return false;
    const char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

inline bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline std::string stem_of(const std::string& w, std::size_t suffix_len) {
    return w.substr(0, w.size() - suffix_len);
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

/// Applies the first rule whose suffix matches, provided measure(stem) is
/// greater than `min_measure`. Returns the (possibly unchanged) word.
template <std::size_t N>
std::string apply_rules(const std::string& w, const Rule (&rules)[N],
                        int min_measure) {
    for (const Rule& r : rules) {
        if (!ends_with(w, r.suffix)) continue;
        std::string stem = stem_of(w, r.suffix.size());
        if (measure(stem) > min_measure)
            return stem + std::string(r.replacement);
        return w;  // matched suffix, failed condition: step is over
    }
    return w;
}

inline std::string step_1a(std::string w) {
    if (ends_with(w, "sses")) return stem_of(w, 4) + "ss";
    if (ends_with(w, "ies")) return stem_of(w, 3) + "i";
    if (ends_with(w, "ss")) return w;
    if (ends_with(w, "s")) return stem_of(w, 1);
    return w;
}

inline std::string step_1b(std::string w) {
    if (ends_with(w, "eed")) {
        std::string stem = stem_of(w, 3);
        if (measure(stem) > 0) return stem + "ee";
        return w;
    }
    bool stripped = false;
    if (ends_with(w, "ed")) {
        std::string stem = stem_of(w, 2);
        if (has_vowel(stem)) {
            w = stem;
            stripped = true;
        }
    } else if (ends_with(w, "ing")) {
        std::string stem = stem_of(w, 3);
        if (has_vowel(stem)) {
            w = stem;
            stripped = true;
        }
    }
    if (!stripped) return w;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz"))
        return w + "e";
    if (ends_double_consonant(w)) {
        const char c = w.back();
        if (c != 'l' && c != 's' && c != 'z') return stem_of(w, 1);
        return w;
    }
    if (measure(w) == 1 && ends_cvc(w)) return w + "e";
    return w;
}

inline std::string step_1c(std::string w) {
    if (ends_with(w, "y")) {
        std::string stem = stem_of(w, 1);
        if (has_vowel(stem)) return stem + "i";
    }
    return w;
}

inline std::string step_2(const std::string& w) {
    // Longer suffixes precede their own suffixes (ization before ation).
    static constexpr Rule rules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},
    };
    return apply_rules(w, rules, 0);
}

inline std::string step_3(const std::string& w) {
    static constexpr Rule rules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    return apply_rules(w, rules, 0);
}

inline std::string step_4(const std::string& w) {
    static constexpr Rule rules[] = {
        {"al", ""},    {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},
        {"able", ""},  {"ible", ""}, {"ant", ""},  {"ement", ""},
        {"ment", ""},  {"ent", ""},  {"ion", ""},  {"ou", ""},  {"ism", ""},
        {"ate", ""},   {"iti", ""},  {"ous", ""},  {"ive", ""}, {"ize", ""},
    };
    for (const Rule& r : rules) {
        if (!ends_with(w, r.suffix)) continue;
        std::string stem = stem_of(w, r.suffix.size());
        if (r.suffix == "ion" && !(ends_with(stem, "s") || ends_with(stem, "t")))
            return w;  // ion only strips after s or t
        if (measure(stem) > 1) return stem;
        return w;
    }
    return w;
}

inline std::string step_5a(std::string w) {
    if (!ends_with(w, "e")) return w;
    std::string stem = stem_of(w, 1);
    const int m = measure(stem);
    if (m > 1) return stem;
    if (m == 1 && !ends_cvc(stem)) return stem;
    return w;
}

inline std::string step_5b(std::string w) {
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
        return stem_of(w, 1);
    return w;
}

}  // namespace porter_detail

/// Stems one lowercase ASCII word.
inline std::string porter_stem(std::string word) {
    using namespace porter_detail;
    if (word.size() <= 2) return word;
    word = step_1a(std::move(word));
    word = step_1b(std::move(word));
    word = step_1c(std::move(word));
    word = step_2(word);
    word = step_3(word);
    word = step_4(word);
    word = step_5a(std::move(word));
    word = step_5b(std::move(word));
    return word;
}

}  // namespace monosplit
