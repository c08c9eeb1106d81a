#ifndef INTENT_SRC_LINEAR_MODELS_HPP
#define INTENT_SRC_LINEAR_MODELS_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "intent/model.hpp"

namespace intent::detail {

// Z-score statistics over the given rows; degenerate columns get stddev 1.
Scaler fit_scaler(const std::vector<std::array<double, kFeatureCount>>& x);

// Multinomial softmax regression: full-batch gradient descent, L2 penalty
// on the weights (bias excluded), inverse step decay. One weight row per
// entry of class_ids; `y` holds positions into class_ids. Inputs must be
// standardized already. Row order does not matter: gradients accumulate
// over rows in index order for a fixed input, and callers pass rows in a
// canonical order for exact permutation invariance.
std::vector<std::array<double, kFeatureCount + 1>> fit_softmax(
    const std::vector<std::array<double, kFeatureCount>>& x, const std::vector<int>& y,
    std::size_t classes, const LrParams& params);

// One-vs-rest linear SVM trained with deterministic epoch-ordered
// Pegasos-style subgradient steps (projection step included, bias
// unregularized). Inputs must be standardized already.
std::vector<std::array<double, kFeatureCount + 1>> fit_ovr_svm(
    const std::vector<std::array<double, kFeatureCount>>& x, const std::vector<int>& y,
    std::size_t classes, const SvmParams& params);

} // namespace intent::detail

#endif
