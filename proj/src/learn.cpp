#include "intent/learn.hpp"

#include <algorithm>
#include <exception>
#include <string>

#include <omp.h>

#include "intent/error.hpp"
#include "intent/features.hpp"
#include "intent/metrics.hpp"
#include "intent/rng.hpp"

namespace intent {
namespace {

// Stream tags for derive_seed so no two pipeline stages share an RNG.
enum SeedStream : std::uint64_t {
    kFoldStream = 1,
    kBalanceStream = 2,
    kGridStream = 3,
    kFitStream = 4,
    kClassStream = 5,
    kInnerFitStream = 6,
};

std::array<std::size_t, 3> count_classes(const std::vector<DatasetRow>& rows) {
    std::array<std::size_t, 3> counts{};
    for (const DatasetRow& row : rows) {
        ++counts[static_cast<std::size_t>(class_index(row.label))];
    }
    return counts;
}

double pooled_inner_accuracy(const ModelSpec& spec, const LabeledDataset& train,
                             const std::vector<std::vector<std::size_t>>& folds,
                             std::uint64_t seed, std::size_t grid_index) {
    std::vector<char> in_test(train.rows.size());
    std::size_t correct = 0;
    for (std::size_t j = 0; j < folds.size(); ++j) {
        std::fill(in_test.begin(), in_test.end(), 0);
        for (std::size_t i : folds[j]) in_test[i] = 1;

        LabeledDataset inner_train;
        inner_train.granularity = train.granularity;
        for (std::size_t i = 0; i < train.rows.size(); ++i) {
            if (!in_test[i]) inner_train.rows.push_back(train.rows[i]);
        }
        ModelSpec fold_spec = spec;
        fold_spec.seed = derive_seed(seed, kInnerFitStream, grid_index, j);
        Model model = fit(fold_spec, inner_train, 1);
        for (std::size_t i : folds[j]) {
            if (predict(model, train.rows[i].features) == train.rows[i].label) ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(train.rows.size());
}

} // namespace

std::vector<ModelSpec> default_grid(Algorithm algorithm) {
    std::vector<ModelSpec> grid;
    ModelSpec spec;
    spec.algorithm = algorithm;
    switch (algorithm) {
    case Algorithm::DecisionTree:
        for (int max_depth : {3, 5, 8, -1}) {
            for (int min_leaf : {1, 5, 20}) {
                spec.dt = DtParams{max_depth, min_leaf};
                grid.push_back(spec);
            }
        }
        break;
    case Algorithm::RandomForest:
        for (int trees : {50, 200}) {
            for (int max_depth : {8, -1}) {
                spec.rf = RfParams{trees, max_depth, 1, 0};
                grid.push_back(spec);
            }
        }
        break;
    case Algorithm::LogisticRegression:
        for (double lambda : {0.001, 0.01, 0.1, 1.0}) {
            spec.lr = LrParams{lambda, 500, 0.1};
            grid.push_back(spec);
        }
        break;
    case Algorithm::LinearSVM:
        for (double c : {0.01, 0.1, 1.0, 10.0}) {
            spec.svm = SvmParams{c, 200};
            grid.push_back(spec);
        }
        break;
    }
    return grid;
}

LabeledDataset balance(const LabeledDataset& train, std::uint64_t seed) {
    std::array<std::vector<std::size_t>, 3> members;
    for (std::size_t i = 0; i < train.rows.size(); ++i) {
        members[static_cast<std::size_t>(class_index(train.rows[i].label))].push_back(i);
    }
    std::size_t target = train.rows.size();
    for (const auto& m : members) {
        if (!m.empty()) target = std::min(target, m.size());
    }

    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < 3; ++c) {
        if (members[c].empty()) continue;
        Rng rng(derive_seed(seed, kClassStream, c));
        rng.shuffle(members[c]);
        keep.insert(keep.end(), members[c].begin(), members[c].begin() + static_cast<std::ptrdiff_t>(target));
    }
    std::sort(keep.begin(), keep.end());

    LabeledDataset balanced;
    balanced.granularity = train.granularity;
    balanced.rows.reserve(keep.size());
    for (std::size_t i : keep) balanced.rows.push_back(train.rows[i]);
    return balanced;
}

std::vector<std::vector<std::size_t>> stratified_folds(const LabeledDataset& data,
                                                       std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw ValidationError("fold count must be at least 2");
    std::array<std::vector<std::size_t>, 3> members;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        members[static_cast<std::size_t>(class_index(data.rows[i].label))].push_back(i);
    }

    std::vector<std::vector<std::size_t>> assignment(folds);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < 3; ++c) {
        if (members[c].empty()) continue;
        if (members[c].size() < folds) {
            throw ValidationError("class '" + std::string(to_string(kTrainingClasses[c])) +
                                  "' has " + std::to_string(members[c].size()) +
                                  " rows, fewer than " + std::to_string(folds) + " folds");
        }
        Rng rng(derive_seed(seed, kClassStream, c));
        rng.shuffle(members[c]);
        // The offset keeps rolling across classes so fold sizes stay
        // within one of each other overall, not just per class.
        for (std::size_t i = 0; i < members[c].size(); ++i) {
            assignment[(offset + i) % folds].push_back(members[c][i]);
        }
        offset = (offset + members[c].size()) % folds;
    }
    for (auto& fold : assignment) std::sort(fold.begin(), fold.end());
    return assignment;
}

ModelSpec grid_search(const std::vector<ModelSpec>& grid, const LabeledDataset& train,
                      std::size_t inner_folds, std::uint64_t seed) {
    if (grid.empty()) throw ValidationError("empty hyperparameter grid");
    for (const ModelSpec& spec : grid) {
        if (spec.algorithm != grid.front().algorithm) {
            throw ValidationError("grid mixes algorithms");
        }
    }
    if (grid.size() == 1) return grid.front();

    auto folds = stratified_folds(train, inner_folds, derive_seed(seed, kFoldStream));
    std::size_t best_index = 0;
    double best_accuracy = -1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double accuracy = pooled_inner_accuracy(grid[g], train, folds, seed, g);
        if (accuracy > best_accuracy) {
            best_accuracy = accuracy;
            best_index = g;
        }
    }
    return grid[best_index];
}

EvalReport cross_validate(Algorithm algorithm, const std::vector<ModelSpec>& grid,
                          const LabeledDataset& data, const CvOptions& options,
                          CvDiagnostics* diagnostics) {
    const std::vector<ModelSpec>& effective_grid =
        grid.empty() ? default_grid(algorithm) : grid;
    for (const ModelSpec& spec : effective_grid) {
        if (spec.algorithm != algorithm) throw ValidationError("grid mixes algorithms");
    }

    auto folds = stratified_folds(data, options.folds, derive_seed(options.seed, kFoldStream));

    struct FoldResult {
        ConfusionMatrix confusion;
        FoldDiagnostics diagnostics;
    };
    std::vector<FoldResult> results(folds.size());
    std::vector<std::exception_ptr> errors(folds.size());

    int jobs = options.jobs > 0 ? options.jobs : omp_get_max_threads();
    auto fold_count = static_cast<std::int64_t>(folds.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t f = 0; f < fold_count; ++f) {
        try {
            auto fi = static_cast<std::size_t>(f);
            std::vector<char> in_test(data.rows.size());
            for (std::size_t i : folds[fi]) in_test[i] = 1;

            LabeledDataset train;
            train.granularity = data.granularity;
            for (std::size_t i = 0; i < data.rows.size(); ++i) {
                if (!in_test[i]) train.rows.push_back(data.rows[i]);
            }
            FoldResult& result = results[fi];
            for (std::size_t i : folds[fi]) {
                ++result.diagnostics
                      .test_class_counts[static_cast<std::size_t>(class_index(data.rows[i].label))];
            }
            result.diagnostics.train_class_counts = count_classes(train.rows);

            if (options.balanced) {
                train = balance(train, derive_seed(options.seed, kBalanceStream, fi));
            }
            result.diagnostics.fitted_class_counts = count_classes(train.rows);

            ModelSpec selected = effective_grid.size() == 1
                                     ? effective_grid.front()
                                     : grid_search(effective_grid, train, 3,
                                                   derive_seed(options.seed, kGridStream, fi));
            selected.seed = derive_seed(options.seed, kFitStream, fi);
            result.diagnostics.selected = selected;

            Model model = fit(selected, train, 1);
            for (std::size_t i : folds[fi]) {
                result.confusion.add(data.rows[i].label, predict(model, data.rows[i].features));
            }
        } catch (...) {
            errors[static_cast<std::size_t>(f)] = std::current_exception();
        }
    }
    for (const std::exception_ptr& error : errors) {
        if (error) std::rethrow_exception(error);
    }

    EvalReport report;
    report.algorithm = std::string(to_string(algorithm));
    report.balanced = options.balanced;
    report.granularity = std::string(to_string(data.granularity));
    report.seed = options.seed;
    report.folds = folds.size();
    for (const FoldResult& result : results) report.confusion += result.confusion;
    report.summary = metrics(report.confusion);

    if (diagnostics) {
        diagnostics->test_folds = std::move(folds);
        diagnostics->folds.clear();
        for (const FoldResult& result : results) diagnostics->folds.push_back(result.diagnostics);
    }
    return report;
}

std::pair<EvalReport, EvalReport> compare_granularity(const LogCorpus& corpus,
                                                      Algorithm algorithm,
                                                      const CvOptions& options) {
    auto run = [&](Granularity granularity) {
        auto rows = featurize_corpus(corpus, granularity, options.jobs);
        LabeledDataset dataset = make_dataset(rows, granularity);
        return cross_validate(algorithm, {}, dataset, options);
    };
    return {run(Granularity::Mission), run(Granularity::LogicalSession)};
}

} // namespace intent
