#ifndef INTENT_MODEL_HPP
#define INTENT_MODEL_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intent/dataset.hpp"
#include "intent/features.hpp"
#include "intent/log_model.hpp"

namespace intent {

enum class Algorithm { DecisionTree, RandomForest, LogisticRegression, LinearSVM };

inline constexpr std::array<Algorithm, 4> kAlgorithms = {
    Algorithm::DecisionTree, Algorithm::RandomForest, Algorithm::LogisticRegression,
    Algorithm::LinearSVM};

// Short token used in CLI arguments, JSON reports, and serialized models.
std::string_view to_string(Algorithm algorithm);
// Table-style display name (DT, RF, LR, SVM).
std::string_view display_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view text);

// max_depth < 0 means unlimited.
struct DtParams {
    int max_depth = -1;
    int min_leaf = 1;

    bool operator==(const DtParams&) const = default;
};

// features_per_split 0 means ceil(sqrt(feature count)).
struct RfParams {
    int trees = 200;
    int max_depth = -1;
    int min_leaf = 1;
    int features_per_split = 0;

    bool operator==(const RfParams&) const = default;
};

struct LrParams {
    double lambda = 0.01;
    int iterations = 500;
    double step = 0.1;

    bool operator==(const LrParams&) const = default;
};

struct SvmParams {
    double c = 1.0;
    int epochs = 200;

    bool operator==(const SvmParams&) const = default;
};

// Algorithm choice plus its hyperparameters; only the block matching
// `algorithm` is read.
struct ModelSpec {
    Algorithm algorithm = Algorithm::DecisionTree;
    DtParams dt;
    RfParams rf;
    LrParams lr;
    SvmParams svm;
    std::uint64_t seed = 0;

    bool operator==(const ModelSpec&) const = default;
};

// Binary tree in preorder storage; `feature` is -1 at leaves and `label`
// holds the majority class index there.
struct TreeNode {
    int feature = -1;
    double threshold = 0;
    int left = -1;
    int right = -1;
    int label = 0;

    bool operator==(const TreeNode&) const = default;
};

struct DecisionTreeModel {
    std::vector<TreeNode> nodes; // root at index 0

    int predict_class(const std::array<double, kFeatureCount>& x) const;

    bool operator==(const DecisionTreeModel&) const = default;
};

struct RandomForestModel {
    std::vector<DecisionTreeModel> trees;

    bool operator==(const RandomForestModel&) const = default;
};

// Per-feature z-score statistics captured from the training fold.
struct Scaler {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> stddev{}; // degenerate columns stored as 1

    std::array<double, kFeatureCount> transform(const std::array<double, kFeatureCount>& x) const;

    bool operator==(const Scaler&) const = default;
};

// Shared shape of the logistic-regression and SVM models: one weight row
// per trained class, bias in the last slot, over standardized features.
struct LinearModel {
    Scaler scaler;
    std::vector<std::array<double, kFeatureCount + 1>> weights;

    bool operator==(const LinearModel&) const = default;
};

struct Model {
    ModelSpec spec;
    std::vector<int> class_ids; // ascending class indices seen in training
    DecisionTreeModel tree;
    RandomForestModel forest;
    LinearModel linear;

    bool operator==(const Model&) const = default;
};

// Deterministic for a fixed (spec, train). Throws ValidationError on an
// empty or single-class training set or non-finite features. jobs only
// affects random-forest wall time, never the fitted model.
Model fit(const ModelSpec& spec, const LabeledDataset& train, int jobs = 1);

// Ties in votes/scores go to the first class in kTrainingClasses order.
IntentLabel predict(const Model& model, const FeatureVector& x);
std::vector<IntentLabel> predict(const Model& model, const std::vector<DatasetRow>& rows);

// Versioned text blob; numeric parameters as hexfloats, round-trip exact.
void serialize_model(std::ostream& out, const Model& model);
Model deserialize_model(std::istream& in);

} // namespace intent

#endif
