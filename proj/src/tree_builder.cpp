#include "tree_builder.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace intent::detail {
namespace {

constexpr double kImpurityTie = 1e-12;

struct Candidate {
    bool found = false;
    int feature = 0;
    double threshold = 0;
    double impurity = std::numeric_limits<double>::infinity();
};

double gini(const std::array<std::size_t, 3>& counts, double n) {
    double impurity = 1.0;
    for (std::size_t c : counts) {
        double p = static_cast<double>(c) / n;
        impurity -= p * p;
    }
    return impurity;
}

class Builder {
public:
    Builder(const std::vector<std::array<double, kFeatureCount>>& x, const std::vector<int>& y,
            const TreeBuildConfig& config, Rng* rng)
        : x_(x), y_(y), config_(config), rng_(rng) {}

    DecisionTreeModel build(std::vector<std::size_t> indices) {
        model_.nodes.clear();
        grow(std::move(indices), 0);
        return std::move(model_);
    }

private:
    int grow(std::vector<std::size_t> indices, int depth) {
        std::array<std::size_t, 3> counts{};
        for (std::size_t i : indices) ++counts[static_cast<std::size_t>(y_[i])];
        int majority = 0;
        for (int c = 1; c < 3; ++c) {
            if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(majority)]) {
                majority = c;
            }
        }
        bool pure = counts[static_cast<std::size_t>(majority)] == indices.size();
        bool depth_capped = config_.max_depth >= 0 && depth >= config_.max_depth;

        int node = static_cast<int>(model_.nodes.size());
        model_.nodes.emplace_back();
        model_.nodes[static_cast<std::size_t>(node)].label = majority;
        if (pure || depth_capped || indices.size() < 2) return node;

        Candidate best = best_split(indices, counts);
        if (!best.found) return node;

        std::vector<std::size_t> left, right;
        for (std::size_t i : indices) {
            (x_[i][static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right)
                .push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        int left_child = grow(std::move(left), depth + 1);
        int right_child = grow(std::move(right), depth + 1);
        TreeNode& parent = model_.nodes[static_cast<std::size_t>(node)];
        parent.feature = best.feature;
        parent.threshold = best.threshold;
        parent.left = left_child;
        parent.right = right_child;
        return node;
    }

    std::vector<int> candidate_features() {
        std::vector<int> features(kFeatureCount);
        for (std::size_t f = 0; f < kFeatureCount; ++f) features[f] = static_cast<int>(f);
        int k = config_.features_per_split;
        if (k <= 0 || k >= static_cast<int>(kFeatureCount)) return features;
        for (int i = 0; i < k; ++i) {
            auto j = static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(rng_->below(kFeatureCount - static_cast<std::size_t>(i)));
            std::swap(features[static_cast<std::size_t>(i)], features[j]);
        }
        features.resize(static_cast<std::size_t>(k));
        std::sort(features.begin(), features.end());
        return features;
    }

    Candidate best_split(const std::vector<std::size_t>& indices,
                         const std::array<std::size_t, 3>& totals) {
        Candidate best;
        auto n = static_cast<double>(indices.size());
        auto min_leaf = static_cast<std::size_t>(std::max(config_.min_leaf, 1));
        std::vector<std::pair<double, int>> column(indices.size());
        for (int feature : candidate_features()) {
            for (std::size_t i = 0; i < indices.size(); ++i) {
                column[i] = {x_[indices[i]][static_cast<std::size_t>(feature)], y_[indices[i]]};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::array<std::size_t, 3> left_counts{};
            for (std::size_t i = 0; i + 1 < column.size(); ++i) {
                ++left_counts[static_cast<std::size_t>(column[i].second)];
                if (column[i].first == column[i + 1].first) continue;
                double threshold = column[i].first / 2.0 + column[i + 1].first / 2.0;
                // Adjacent representable values can collapse the midpoint
                // onto the right value; that boundary has no usable cut.
                if (!(threshold < column[i + 1].first)) continue;
                std::size_t lc = i + 1;
                std::size_t rc = column.size() - lc;
                if (lc < min_leaf || rc < min_leaf) continue;
                std::array<std::size_t, 3> right_counts{};
                for (std::size_t c = 0; c < 3; ++c) right_counts[c] = totals[c] - left_counts[c];
                double weighted = (static_cast<double>(lc) * gini(left_counts, static_cast<double>(lc)) +
                                   static_cast<double>(rc) * gini(right_counts, static_cast<double>(rc))) /
                                  n;
                if (weighted < best.impurity - kImpurityTie) {
                    best.found = true;
                    best.feature = feature;
                    best.threshold = threshold;
                    best.impurity = weighted;
                }
            }
        }
        return best;
    }

    const std::vector<std::array<double, kFeatureCount>>& x_;
    const std::vector<int>& y_;
    TreeBuildConfig config_;
    Rng* rng_;
    DecisionTreeModel model_;
};

} // namespace

DecisionTreeModel build_cart_tree(const std::vector<std::array<double, kFeatureCount>>& x,
                                  const std::vector<int>& y, std::vector<std::size_t> indices,
                                  const TreeBuildConfig& config, Rng* rng) {
    Builder builder(x, y, config, rng);
    return builder.build(std::move(indices));
}

} // namespace intent::detail
