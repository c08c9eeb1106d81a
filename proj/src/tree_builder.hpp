#ifndef INTENT_SRC_TREE_BUILDER_HPP
#define INTENT_SRC_TREE_BUILDER_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "intent/model.hpp"
#include "intent/rng.hpp"

namespace intent::detail {

struct TreeBuildConfig {
    int max_depth = -1;        // < 0 unlimited
    int min_leaf = 1;
    int features_per_split = 0; // 0 = consider every feature
};

// CART with Gini impurity and midpoint thresholds. Splits are accepted
// while a node is impure and any min_leaf-respecting threshold exists
// (zero-gain splits included, so parity-style concepts are learnable);
// among candidates the lowest weighted child impurity wins, ties broken
// by lowest feature index then lowest threshold. `rng` drives per-split
// feature subsampling and must be non-null when features_per_split > 0.
DecisionTreeModel build_cart_tree(const std::vector<std::array<double, kFeatureCount>>& x,
                                  const std::vector<int>& y, std::vector<std::size_t> indices,
                                  const TreeBuildConfig& config, Rng* rng);

} // namespace intent::detail

#endif
