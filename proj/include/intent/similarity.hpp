#ifndef INTENT_SIMILARITY_HPP
#define INTENT_SIMILARITY_HPP

#include <cstddef>
#include <string_view>

namespace intent {

// Cosine similarity of the character n-gram count vectors of a and b,
// in [0, 1]. Grams are taken over the raw byte string, interior spaces
// included, no boundary padding; callers lowercase first. If either
// side is shorter than n it has no grams: equal strings compare as 1.0,
// anything else as 0.0. n must be 3 or 4.
double char_ngram_cosine(std::string_view a, std::string_view b, int n);

// Character-level edit distance, unit costs.
std::size_t levenshtein(std::string_view a, std::string_view b);

} // namespace intent

#endif
