#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace namegauge {

// Character n-gram term-frequency profile: grams sorted, with counts.
struct GramMultiset {
    std::vector<std::pair<std::string, int>> items;
    double norm = 0.0;

    bool empty() const { return items.empty(); }
    void recompute_norm();
};

// All substrings of length lo..hi of each whitespace token, with
// multiplicity. A token shorter than lo contributes itself once, so very
// short names still produce a profile.
GramMultiset char_ngrams(std::string_view text, int lo = 2, int hi = 4);

// Multiset sum and difference (difference clamps at zero).
GramMultiset gram_add(const GramMultiset& a, const GramMultiset& b);
GramMultiset gram_subtract(const GramMultiset& total, const GramMultiset& part);

// Cosine over term-frequency vectors; 0 when either profile is empty.
double tf_cosine(const GramMultiset& a, const GramMultiset& b);

// Jaro-Winkler with the standard prefix bonus (length capped at 4,
// scale 0.1). Two empty strings score 1, one empty scores 0.
double jaro_winkler(std::string_view a, std::string_view b);

// Cosine over token count vectors; 0 when either list is empty.
double token_cosine(std::span<const std::string> a, std::span<const std::string> b);

// Jaccard over token sets; 0 when both are empty.
double token_jaccard(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace namegauge
