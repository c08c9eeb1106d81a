// Independent reference implementations used to check the production
// similarity code. Written for clarity over speed: full-matrix DP for
// edit distance, map-based n-gram enumeration for cosine.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::vector<std::size_t>> d(a.size() + 1,
                                            std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t subst = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, subst});
        }
    }
    return d[a.size()][b.size()];
}

inline std::map<std::string, std::size_t> ngram_counts(const std::string& text, std::size_t n) {
    std::map<std::string, std::size_t> counts;
    if (text.size() >= n) {
        for (std::size_t i = 0; i + n <= text.size(); ++i) ++counts[text.substr(i, n)];
    }
    return counts;
}

// Mirrors the production contract: inputs are assumed pre-lowercased.
inline double ngram_cosine(const std::string& a, const std::string& b, std::size_t n) {
    if (a.size() < n || b.size() < n) return a == b ? 1.0 : 0.0;
    auto ca = ngram_counts(a, n), cb = ngram_counts(b, n);
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [gram, count] : ca) {
        na += static_cast<double>(count) * static_cast<double>(count);
        auto it = cb.find(gram);
        if (it != cb.end()) dot += static_cast<double>(count) * static_cast<double>(it->second);
    }
    for (const auto& [gram, count] : cb) {
        nb += static_cast<double>(count) * static_cast<double>(count);
    }
    double cosine = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::min(1.0, std::max(0.0, cosine));
}

} // namespace oracle
