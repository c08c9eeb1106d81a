#include "linear_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace intent::detail {

Scaler fit_scaler(const std::vector<std::array<double, kFeatureCount>>& x) {
    Scaler scaler;
    auto n = static_cast<double>(x.size());
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        double sum = 0;
        for (const auto& row : x) sum += row[f];
        scaler.mean[f] = sum / n;
        double var = 0;
        for (const auto& row : x) {
            double d = row[f] - scaler.mean[f];
            var += d * d;
        }
        double sd = std::sqrt(var / n);
        scaler.stddev[f] = sd > 1e-12 ? sd : 1.0;
    }
    return scaler;
}

std::vector<std::array<double, kFeatureCount + 1>> fit_softmax(
    const std::vector<std::array<double, kFeatureCount>>& x, const std::vector<int>& y,
    std::size_t classes, const LrParams& params) {
    const std::size_t n = x.size();
    std::vector<std::array<double, kFeatureCount + 1>> weights(
        classes, std::array<double, kFeatureCount + 1>{});
    std::vector<std::array<double, kFeatureCount + 1>> gradient(
        classes, std::array<double, kFeatureCount + 1>{});
    std::vector<double> scores(classes);

    for (int iter = 0; iter < params.iterations; ++iter) {
        for (auto& row : gradient) row.fill(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double max_score = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < classes; ++k) {
                double s = weights[k][kFeatureCount];
                for (std::size_t f = 0; f < kFeatureCount; ++f) s += weights[k][f] * x[i][f];
                scores[k] = s;
                max_score = std::max(max_score, s);
            }
            double z = 0;
            for (std::size_t k = 0; k < classes; ++k) {
                scores[k] = std::exp(scores[k] - max_score);
                z += scores[k];
            }
            for (std::size_t k = 0; k < classes; ++k) {
                double residual = scores[k] / z - (y[i] == static_cast<int>(k) ? 1.0 : 0.0);
                for (std::size_t f = 0; f < kFeatureCount; ++f) {
                    gradient[k][f] += residual * x[i][f];
                }
                gradient[k][kFeatureCount] += residual;
            }
        }
        double step = params.step / (1.0 + static_cast<double>(iter) / 100.0);
        double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t k = 0; k < classes; ++k) {
            for (std::size_t f = 0; f < kFeatureCount; ++f) {
                weights[k][f] -= step * (gradient[k][f] * inv_n + params.lambda * weights[k][f]);
            }
            weights[k][kFeatureCount] -= step * gradient[k][kFeatureCount] * inv_n;
        }
    }
    return weights;
}

std::vector<std::array<double, kFeatureCount + 1>> fit_ovr_svm(
    const std::vector<std::array<double, kFeatureCount>>& x, const std::vector<int>& y,
    std::size_t classes, const SvmParams& params) {
    const std::size_t n = x.size();
    std::vector<std::array<double, kFeatureCount + 1>> weights(
        classes, std::array<double, kFeatureCount + 1>{});
    const double lambda = 1.0 / (params.c * static_cast<double>(n));
    const double radius = 1.0 / std::sqrt(lambda);

    double t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        for (std::size_t i = 0; i < n; ++i) {
            t += 1.0;
            double eta = 1.0 / (lambda * t);
            for (std::size_t k = 0; k < classes; ++k) {
                double target = y[i] == static_cast<int>(k) ? 1.0 : -1.0;
                double score = weights[k][kFeatureCount];
                for (std::size_t f = 0; f < kFeatureCount; ++f) score += weights[k][f] * x[i][f];
                double shrink = 1.0 - eta * lambda;
                double norm_sq = 0;
                for (std::size_t f = 0; f < kFeatureCount; ++f) {
                    weights[k][f] *= shrink;
                    if (target * score < 1.0) weights[k][f] += eta * target * x[i][f];
                    norm_sq += weights[k][f] * weights[k][f];
                }
                if (target * score < 1.0) weights[k][kFeatureCount] += eta * target;
                // Pegasos projection onto the ball of radius 1/sqrt(lambda).
                if (norm_sq > radius * radius) {
                    double scale = radius / std::sqrt(norm_sq);
                    for (std::size_t f = 0; f < kFeatureCount; ++f) weights[k][f] *= scale;
                }
            }
        }
    }
    return weights;
}

} // namespace intent::detail
