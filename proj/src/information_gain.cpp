#include "intent/information_gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <omp.h>

#include "intent/error.hpp"
#include "intent/features.hpp"

namespace intent {
namespace {

struct SplitScan {
    bool found = false;
    std::size_t boundary = 0; // samples [lo, lo+boundary) go left
    double threshold = 0;
    double left_entropy = 0;
    double right_entropy = 0;
    std::array<std::int64_t, 3> left_counts{};
    std::array<std::int64_t, 3> right_counts{};
};

int classes_present(const std::array<std::int64_t, 3>& counts) {
    int k = 0;
    for (std::int64_t c : counts) k += c > 0 ? 1 : 0;
    return k;
}

// Lowest conditional entropy over distinct-value midpoints in
// samples[lo, hi); ties keep the lowest threshold.
SplitScan best_split(const std::vector<std::pair<double, int>>& samples, std::size_t lo,
                     std::size_t hi, const std::array<std::int64_t, 3>& totals) {
    SplitScan best;
    double best_conditional = std::numeric_limits<double>::infinity();
    auto n = static_cast<double>(hi - lo);
    std::array<std::int64_t, 3> left{};
    for (std::size_t i = lo; i + 1 < hi; ++i) {
        ++left[static_cast<std::size_t>(samples[i].second)];
        if (samples[i].first == samples[i + 1].first) continue;
        double threshold = samples[i].first / 2.0 + samples[i + 1].first / 2.0;
        if (!(threshold < samples[i + 1].first)) continue;
        std::array<std::int64_t, 3> right{};
        for (std::size_t c = 0; c < 3; ++c) right[c] = totals[c] - left[c];
        auto lc = static_cast<double>(i + 1 - lo);
        auto rc = n - lc;
        double le = entropy_bits(left);
        double re = entropy_bits(right);
        double conditional = (lc * le + rc * re) / n;
        if (conditional < best_conditional) {
            best_conditional = conditional;
            best.found = true;
            best.boundary = i + 1 - lo;
            best.threshold = threshold;
            best.left_entropy = le;
            best.right_entropy = re;
            best.left_counts = left;
            best.right_counts = right;
        }
    }
    return best;
}

void mdl_recurse(const std::vector<std::pair<double, int>>& samples, std::size_t lo,
                 std::size_t hi, std::vector<double>& cuts) {
    auto n = static_cast<double>(hi - lo);
    if (hi - lo < 2) return;
    std::array<std::int64_t, 3> totals{};
    for (std::size_t i = lo; i < hi; ++i) ++totals[static_cast<std::size_t>(samples[i].second)];
    double parent_entropy = entropy_bits(totals);
    if (parent_entropy == 0.0) return;

    SplitScan split = best_split(samples, lo, hi, totals);
    if (!split.found) return;

    double gain = parent_entropy - (static_cast<double>(split.boundary) * split.left_entropy +
                                    (n - static_cast<double>(split.boundary)) * split.right_entropy) /
                                       n;
    int k = classes_present(totals);
    int k1 = classes_present(split.left_counts);
    int k2 = classes_present(split.right_counts);
    double delta = std::log2(std::pow(3.0, k) - 2.0) -
                   (static_cast<double>(k) * parent_entropy -
                    static_cast<double>(k1) * split.left_entropy -
                    static_cast<double>(k2) * split.right_entropy);
    if (gain <= (std::log2(n - 1.0) + delta) / n) return;

    cuts.push_back(split.threshold);
    mdl_recurse(samples, lo, lo + split.boundary, cuts);
    mdl_recurse(samples, lo + split.boundary, hi, cuts);
}

std::vector<double> equal_frequency_cuts(const std::vector<std::pair<double, int>>& samples) {
    constexpr std::size_t kBins = 10;
    std::vector<std::pair<double, std::size_t>> distinct; // value, multiplicity
    for (const auto& [value, cls] : samples) {
        if (distinct.empty() || distinct.back().first != value) {
            distinct.emplace_back(value, 1);
        } else {
            ++distinct.back().second;
        }
    }
    std::vector<double> cuts;
    if (distinct.size() < 2) return cuts;

    std::size_t remaining = samples.size();
    std::size_t bins_left = kBins;
    std::size_t filled = 0;
    for (std::size_t d = 0; d + 1 < distinct.size() && bins_left > 1; ++d) {
        filled += distinct[d].second;
        double target = static_cast<double>(remaining) / static_cast<double>(bins_left);
        if (static_cast<double>(filled) >= target) {
            cuts.push_back(distinct[d].first / 2.0 + distinct[d + 1].first / 2.0);
            remaining -= filled;
            filled = 0;
            --bins_left;
        }
    }
    return cuts;
}

std::vector<std::pair<double, int>> feature_samples(const LabeledDataset& data,
                                                    std::size_t feature) {
    std::vector<std::pair<double, int>> samples;
    samples.reserve(data.rows.size());
    for (const DatasetRow& row : data.rows) {
        double value = row.features.to_array()[feature];
        if (!std::isfinite(value)) {
            throw ValidationError("non-finite value of feature '" +
                                  std::string(kFeatureNames[feature]) + "' in unit '" +
                                  row.unit_id + "'");
        }
        samples.emplace_back(value, class_index(row.label));
    }
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return samples;
}

} // namespace

std::string_view to_string(Discretizer discretizer) {
    return discretizer == Discretizer::MdlStopping ? "mdl" : "eqfreq";
}

std::optional<Discretizer> parse_discretizer(std::string_view text) {
    if (text == "mdl") return Discretizer::MdlStopping;
    if (text == "eqfreq") return Discretizer::EqualFrequency10;
    return std::nullopt;
}

double entropy_bits(const std::array<std::int64_t, 3>& counts) {
    std::int64_t total = counts[0] + counts[1] + counts[2];
    if (total <= 0) return 0.0;
    double entropy = 0.0;
    for (std::int64_t c : counts) {
        if (c <= 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        entropy -= p * std::log2(p);
    }
    return entropy;
}

std::vector<double> mdl_cut_points(std::vector<std::pair<double, int>> samples) {
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> cuts;
    mdl_recurse(samples, 0, samples.size(), cuts);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
}

double information_gain(const LabeledDataset& data, std::size_t feature,
                        Discretizer discretizer) {
    if (data.rows.empty()) throw ValidationError("empty dataset");
    std::vector<std::pair<double, int>> samples = feature_samples(data, feature);

    std::vector<double> cuts;
    if (discretizer == Discretizer::MdlStopping) {
        cuts.clear();
        mdl_recurse(samples, 0, samples.size(), cuts);
        std::sort(cuts.begin(), cuts.end());
    } else {
        cuts = equal_frequency_cuts(samples);
    }

    std::array<std::int64_t, 3> totals{};
    std::vector<std::array<std::int64_t, 3>> bins(cuts.size() + 1);
    for (const auto& [value, cls] : samples) {
        ++totals[static_cast<std::size_t>(cls)];
        auto bin = static_cast<std::size_t>(
            std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
        ++bins[bin][static_cast<std::size_t>(cls)];
    }
    double conditional = 0.0;
    auto n = static_cast<double>(samples.size());
    for (const auto& bin : bins) {
        auto size = static_cast<double>(bin[0] + bin[1] + bin[2]);
        if (size > 0) conditional += size / n * entropy_bits(bin);
    }
    return std::max(0.0, entropy_bits(totals) - conditional);
}

std::vector<RankedFeature> rank_features(const LabeledDataset& data, Discretizer discretizer,
                                         int jobs) {
    std::array<double, kFeatureCount> gains{};
    if (jobs <= 0) jobs = omp_get_max_threads();
    std::vector<std::exception_ptr> errors(kFeatureCount);
    auto count = static_cast<std::int64_t>(kFeatureCount);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t f = 0; f < count; ++f) {
        try {
            gains[static_cast<std::size_t>(f)] =
                information_gain(data, static_cast<std::size_t>(f), discretizer);
        } catch (...) {
            errors[static_cast<std::size_t>(f)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& error : errors) {
        if (error) std::rethrow_exception(error);
    }

    std::array<std::size_t, kFeatureCount> order;
    for (std::size_t f = 0; f < kFeatureCount; ++f) order[f] = f;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

    std::vector<RankedFeature> ranking;
    ranking.reserve(kFeatureCount);
    for (std::size_t f : order) {
        ranking.push_back(RankedFeature{std::string(kFeatureNames[f]), gains[f]});
    }
    return ranking;
}

std::vector<RankedFeature> rank_features_serial(const LabeledDataset& data,
                                                Discretizer discretizer) {
    std::array<double, kFeatureCount> gains{};
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        gains[f] = information_gain(data, f, discretizer);
    }
    std::array<std::size_t, kFeatureCount> order;
    for (std::size_t f = 0; f < kFeatureCount; ++f) order[f] = f;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
    std::vector<RankedFeature> ranking;
    ranking.reserve(kFeatureCount);
    for (std::size_t f : order) {
        ranking.push_back(RankedFeature{std::string(kFeatureNames[f]), gains[f]});
    }
    return ranking;
}

} // namespace intent
