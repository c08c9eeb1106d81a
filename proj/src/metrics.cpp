#include "intent/metrics.hpp"

#include "intent/error.hpp"

namespace intent {

void ConfusionMatrix::add(IntentLabel truth, IntentLabel predicted, std::int64_t n) {
    int row = class_index(truth);
    int col = class_index(predicted);
    if (row < 0 || col < 0) throw ValidationError("ambiguous label in confusion matrix");
    counts[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] += n;
}

std::int64_t ConfusionMatrix::total() const {
    std::int64_t sum = 0;
    for (const auto& row : counts) {
        for (std::int64_t cell : row) sum += cell;
    }
    return sum;
}

std::int64_t ConfusionMatrix::trace() const {
    return counts[0][0] + counts[1][1] + counts[2][2];
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) counts[r][c] += other.counts[r][c];
    }
    return *this;
}

MetricsSummary metrics(const ConfusionMatrix& cm, const std::array<double, 3>& class_freqs) {
    std::int64_t total = cm.total();
    if (total <= 0) throw ValidationError("empty confusion matrix");

    MetricsSummary summary;
    double weight_sum = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        std::int64_t tp = cm.counts[k][k];
        std::int64_t predicted = 0, actual = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            predicted += cm.counts[i][k];
            actual += cm.counts[k][i];
        }
        ClassMetrics& m = summary.per_class[k];
        m.precision = predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
        m.recall = actual > 0 ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
        double pr = m.precision + m.recall;
        m.f1 = pr > 0 ? 2.0 * m.precision * m.recall / pr : 0.0;

        double w = class_freqs[k];
        summary.weighted.precision += w * m.precision;
        summary.weighted.recall += w * m.recall;
        summary.weighted.f1 += w * m.f1;
        weight_sum += w;
    }
    if (weight_sum > 0) {
        summary.weighted.precision /= weight_sum;
        summary.weighted.recall /= weight_sum;
        summary.weighted.f1 /= weight_sum;
    }
    summary.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(total);
    return summary;
}

MetricsSummary metrics(const ConfusionMatrix& cm) {
    std::array<double, 3> freqs{};
    for (std::size_t k = 0; k < 3; ++k) {
        freqs[k] = static_cast<double>(cm.counts[k][0] + cm.counts[k][1] + cm.counts[k][2]);
    }
    return metrics(cm, freqs);
}

} // namespace intent
