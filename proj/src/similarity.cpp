#include "intent/similarity.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

namespace intent {
namespace {

// An n-gram of up to 4 bytes packed into a sortable integer key.
std::vector<std::uint32_t> gram_keys(std::string_view s, int n) {
    std::vector<std::uint32_t> keys;
    if (s.size() < static_cast<std::size_t>(n)) return keys;
    keys.reserve(s.size() - static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= s.size(); ++i) {
        std::uint32_t key = 0;
        for (int k = 0; k < n; ++k) {
            key = (key << 8) | static_cast<std::uint8_t>(s[i + static_cast<std::size_t>(k)]);
        }
        keys.push_back(key);
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Sum of squared run lengths of a sorted key list.
double squared_norm(const std::vector<std::uint32_t>& keys) {
    double total = 0.0;
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        double count = static_cast<double>(j - i);
        total += count * count;
        i = j;
    }
    return total;
}

} // namespace

double char_ngram_cosine(std::string_view a, std::string_view b, int n) {
    assert(n == 3 || n == 4);
    if (a == b) return 1.0;
    std::vector<std::uint32_t> ga = gram_keys(a, n);
    std::vector<std::uint32_t> gb = gram_keys(b, n);
    if (ga.empty() || gb.empty()) return 0.0;

    double dot = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ga.size() && j < gb.size()) {
        if (ga[i] < gb[j]) {
            ++i;
        } else if (gb[j] < ga[i]) {
            ++j;
        } else {
            std::size_t i2 = i, j2 = j;
            while (i2 < ga.size() && ga[i2] == ga[i]) ++i2;
            while (j2 < gb.size() && gb[j2] == gb[j]) ++j2;
            dot += static_cast<double>(i2 - i) * static_cast<double>(j2 - j);
            i = i2;
            j = j2;
        }
    }
    if (dot == 0.0) return 0.0;
    double cosine = dot / std::sqrt(squared_norm(ga) * squared_norm(gb));
    return std::clamp(cosine, 0.0, 1.0);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i + 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t next_diag = row[j + 1];
            std::size_t substitute = diag + (a[i] == b[j] ? 0 : 1);
            row[j + 1] = std::min({row[j + 1] + 1, row[j] + 1, substitute});
            diag = next_diag;
        }
    }
    return row[b.size()];
}

} // namespace intent
