#ifndef INTENT_LEARN_HPP
#define INTENT_LEARN_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "intent/dataset.hpp"
#include "intent/ingest.hpp"
#include "intent/model.hpp"
#include "intent/report.hpp"

namespace intent {

// Hyperparameter grid for one algorithm, in declaration order (the
// grid-search tie-break order).
std::vector<ModelSpec> default_grid(Algorithm algorithm);

// Random undersampling of every class to the minority-class size,
// without replacement. Selected rows keep their dataset order. Only ever
// applied to training folds.
LabeledDataset balance(const LabeledDataset& train, std::uint64_t seed);

// Seeded stratified fold assignment: per-class shuffle, then round-robin
// across folds with a running offset so fold sizes differ by at most
// one. Returns row indices per fold, each sorted ascending. Throws,
// naming the class, when a present class has fewer rows than folds.
std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data,
                                                       std::size_t folds, std::uint64_t seed);

// Exhaustive search over the grid, scored by pooled inner stratified
// cross-validation accuracy on `train` alone; every grid point sees the
// same inner folds. Ties keep the earliest grid entry.
ModelSpec grid_search(const std::vector<ModelSpec>& grid, const LabeledDataset& train,
                      std::size_t inner_folds, std::uint64_t seed);

struct CvOptions {
    std::size_t folds = 10;
    bool balanced = false;
    std::uint64_t seed = 42;
    int jobs = 1; // ≤ 0 means all available cores
};

// Per-fold bookkeeping exposed for hygiene checks: the evaluation fold
// is never resampled, so its class counts always match the partition.
struct FoldDiagnostics {
    std::array<std::size_t, 3> test_class_counts{};
    std::array<std::size_t, 3> train_class_counts{};  // before balancing
    std::array<std::size_t, 3> fitted_class_counts{}; // after balancing
    ModelSpec selected;
};

struct CvDiagnostics {
    std::vector<std::vector<std::size_t>> test_folds;
    std::vector<FoldDiagnostics> folds;
};

// Outer stratified k-fold loop: per fold optionally balance the training
// split, tune by nested grid search, fit, and score the held-out fold;
// the pooled confusion matrix feeds the report. An empty grid means
// default_grid(algorithm). Results are independent of jobs.
EvalReport cross_validate(Algorithm algorithm, const std::vector<ModelSpec>& grid,
                          const LabeledDataset& data, const CvOptions& options,
                          CvDiagnostics* diagnostics = nullptr);

// The same pipeline at mission and logical-session granularity; logical
// sessions inherit their mission's label.
std::pair<EvalReport, EvalReport> compare_granularity(const LogCorpus& corpus,
                                                      Algorithm algorithm,
                                                      const CvOptions& options);

} // namespace intent

#endif
