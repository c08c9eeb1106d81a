#ifndef INTENT_METRICS_HPP
#define INTENT_METRICS_HPP

#include <array>
#include <cstdint>

#include "intent/log_model.hpp"

namespace intent {

// Rows are true classes, columns predicted, both in kTrainingClasses order.
struct ConfusionMatrix {
    std::array<std::array<std::int64_t, 3>, 3> counts{};

    void add(IntentLabel truth, IntentLabel predicted, std::int64_t n = 1);
    std::int64_t total() const;
    std::int64_t trace() const;
    ConfusionMatrix& operator+=(const ConfusionMatrix& other);

    bool operator==(const ConfusionMatrix&) const = default;
};

struct ClassMetrics {
    double precision = 0;
    double recall = 0;
    double f1 = 0;

    bool operator==(const ClassMetrics&) const = default;
};

struct MetricsSummary {
    std::array<ClassMetrics, 3> per_class;
    ClassMetrics weighted;
    double accuracy = 0;

    bool operator==(const MetricsSummary&) const = default;
};

// P = TP/(TP+FP), R = TP/(TP+FN), F1 = 2PR/(P+R), each 0 when its
// denominator is 0; accuracy = trace/total; weighted scores average the
// per-class scores with the given weights. Throws on an empty matrix.
MetricsSummary metrics(const ConfusionMatrix& cm, const std::array<double, 3>& class_freqs);

// Weights default to true-class frequencies (row sums), which makes the
// weighted recall equal the accuracy.
MetricsSummary metrics(const ConfusionMatrix& cm);

} // namespace intent

#endif
