#ifndef INTENT_INFORMATION_GAIN_HPP
#define INTENT_INFORMATION_GAIN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intent/dataset.hpp"

namespace intent {

// How a numeric feature is binned before computing information gain.
enum class Discretizer {
    MdlStopping,      // recursive entropy minimization with the MDL stop rule
    EqualFrequency10, // fixed 10-bin equal-frequency diagnostic fallback
};

std::string_view to_string(Discretizer discretizer);
std::optional<Discretizer> parse_discretizer(std::string_view text);

// Base-2 entropy of a class-count histogram, in bits.
double entropy_bits(const std::array<std::int64_t, 3>& counts);

// Accepted cut thresholds for one (value, class) sample, ascending.
// Recursive best-entropy splitting on distinct-value midpoints; a split
// survives only if its gain clears the MDL cost of encoding it, so a
// feature carrying no class signal yields no cuts at all.
std::vector<double> mdl_cut_points(std::vector<std::pair<double, int>> samples);

// IG(feature) = H(class) − H(class | binned feature), in bits. Features
// that discretize to a single bin score exactly 0.
double information_gain(const LabeledDataset& data, std::size_t feature,
                        Discretizer discretizer = Discretizer::MdlStopping);

struct RankedFeature {
    std::string name;
    double gain = 0;

    bool operator==(const RankedFeature&) const = default;
};

// All 22 features by descending gain; ties keep feature-table order.
// jobs ≤ 0 means all available cores.
std::vector<RankedFeature> rank_features(const LabeledDataset& data,
                                         Discretizer discretizer = Discretizer::MdlStopping,
                                         int jobs = 1);

// Single-threaded reference twin of rank_features.
std::vector<RankedFeature> rank_features_serial(
    const LabeledDataset& data, Discretizer discretizer = Discretizer::MdlStopping);

} // namespace intent

#endif
