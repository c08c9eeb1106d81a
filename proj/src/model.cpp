#include "intent/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include <omp.h>

#include "intent/error.hpp"
#include "intent/rng.hpp"
#include "linear_models.hpp"
#include "tree_builder.hpp"

namespace intent {
namespace {

constexpr std::string_view kModelMagic = "intent-model";
constexpr int kModelVersion = 1;
constexpr std::uint64_t kForestStream = 77;

std::string hex_double(double value) {
    char buffer[48];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                   std::chars_format::hex);
    return std::string(buffer, ptr);
}

double parse_hex_double(const std::string& token, std::string_view what) {
    double value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::hex);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("model: bad " + std::string(what) + " '" + token + "'");
    }
    return value;
}

struct TrainingMatrix {
    std::vector<std::array<double, kFeatureCount>> x;
    std::vector<int> y;        // class indices 0..2
    std::vector<int> class_ids; // ascending, ≥2 entries
};

// Logistic regression reads rows in unit-id order so the fitted weights
// are exactly permutation-invariant; everything else keeps dataset order.
TrainingMatrix build_matrix(const LabeledDataset& train, bool canonical_order) {
    if (train.rows.empty()) throw ValidationError("empty training set");

    std::vector<std::size_t> order(train.rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (canonical_order) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return train.rows[a].unit_id < train.rows[b].unit_id;
        });
    }

    TrainingMatrix matrix;
    matrix.x.reserve(train.rows.size());
    matrix.y.reserve(train.rows.size());
    std::array<bool, 3> present{};
    for (std::size_t i : order) {
        const DatasetRow& row = train.rows[i];
        auto values = row.features.to_array();
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw ValidationError("non-finite feature value in unit '" + row.unit_id + "'");
            }
        }
        int cls = class_index(row.label);
        present[static_cast<std::size_t>(cls)] = true;
        matrix.x.push_back(values);
        matrix.y.push_back(cls);
    }
    for (int c = 0; c < 3; ++c) {
        if (present[static_cast<std::size_t>(c)]) matrix.class_ids.push_back(c);
    }
    if (matrix.class_ids.size() < 2) {
        throw ValidationError("single-class training set (only '" +
                              std::string(to_string(kTrainingClasses[static_cast<std::size_t>(
                                  matrix.class_ids.at(0))])) +
                              "')");
    }
    return matrix;
}

std::vector<int> positions_in_class_ids(const std::vector<int>& y,
                                        const std::vector<int>& class_ids) {
    std::vector<int> positions(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        auto it = std::find(class_ids.begin(), class_ids.end(), y[i]);
        positions[i] = static_cast<int>(it - class_ids.begin());
    }
    return positions;
}

int forest_feature_count(const RfParams& params) {
    if (params.features_per_split > 0) return params.features_per_split;
    return static_cast<int>(std::ceil(std::sqrt(static_cast<double>(kFeatureCount))));
}

std::string read_token(std::istream& in, std::string_view what) {
    std::string token;
    if (!(in >> token)) throw ParseError("model: truncated input, expected " + std::string(what));
    return token;
}

long long read_int(std::istream& in, std::string_view what) {
    std::string token = read_token(in, what);
    long long value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError("model: bad " + std::string(what) + " '" + token + "'");
    }
    return value;
}

void expect_token(std::istream& in, std::string_view want) {
    std::string token = read_token(in, want);
    if (token != want) {
        throw ParseError("model: expected '" + std::string(want) + "', got '" + token + "'");
    }
}

void write_tree(std::ostream& out, const DecisionTreeModel& tree) {
    out << "tree " << tree.nodes.size() << '\n';
    for (const TreeNode& node : tree.nodes) {
        out << "node " << node.feature << ' ' << hex_double(node.threshold) << ' ' << node.left
            << ' ' << node.right << ' ' << node.label << '\n';
    }
}

DecisionTreeModel read_tree(std::istream& in) {
    expect_token(in, "tree");
    auto count = read_int(in, "node count");
    if (count < 0) throw ParseError("model: negative node count");
    DecisionTreeModel tree;
    tree.nodes.resize(static_cast<std::size_t>(count));
    for (TreeNode& node : tree.nodes) {
        expect_token(in, "node");
        node.feature = static_cast<int>(read_int(in, "feature"));
        node.threshold = parse_hex_double(read_token(in, "threshold"), "threshold");
        node.left = static_cast<int>(read_int(in, "left"));
        node.right = static_cast<int>(read_int(in, "right"));
        node.label = static_cast<int>(read_int(in, "label"));
        if (node.label < 0 || node.label > 2) throw ParseError("model: node label out of range");
    }
    return tree;
}

void write_scaler(std::ostream& out, const Scaler& scaler) {
    out << "mean";
    for (double m : scaler.mean) out << ' ' << hex_double(m);
    out << "\nstddev";
    for (double s : scaler.stddev) out << ' ' << hex_double(s);
    out << '\n';
}

Scaler read_scaler(std::istream& in) {
    Scaler scaler;
    expect_token(in, "mean");
    for (double& m : scaler.mean) m = parse_hex_double(read_token(in, "mean"), "mean");
    expect_token(in, "stddev");
    for (double& s : scaler.stddev) s = parse_hex_double(read_token(in, "stddev"), "stddev");
    return scaler;
}

} // namespace

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::DecisionTree: return "dt";
    case Algorithm::RandomForest: return "rf";
    case Algorithm::LogisticRegression: return "lr";
    case Algorithm::LinearSVM: return "svm";
    }
    return "unknown";
}

std::string_view display_name(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::DecisionTree: return "DT";
    case Algorithm::RandomForest: return "RF";
    case Algorithm::LogisticRegression: return "LR";
    case Algorithm::LinearSVM: return "SVM";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
    if (text == "dt" || text == "decision_tree") return Algorithm::DecisionTree;
    if (text == "rf" || text == "random_forest") return Algorithm::RandomForest;
    if (text == "lr" || text == "logistic_regression") return Algorithm::LogisticRegression;
    if (text == "svm" || text == "linear_svm") return Algorithm::LinearSVM;
    return std::nullopt;
}

int DecisionTreeModel::predict_class(const std::array<double, kFeatureCount>& x) const {
    std::size_t node = 0;
    while (nodes[node].feature >= 0) {
        const TreeNode& n = nodes[node];
        node = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold
                                            ? n.left
                                            : n.right);
    }
    return nodes[node].label;
}

std::array<double, kFeatureCount> Scaler::transform(
    const std::array<double, kFeatureCount>& x) const {
    std::array<double, kFeatureCount> scaled;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        scaled[f] = (x[f] - mean[f]) / stddev[f];
    }
    return scaled;
}

Model fit(const ModelSpec& spec, const LabeledDataset& train, int jobs) {
    bool canonical = spec.algorithm == Algorithm::LogisticRegression;
    TrainingMatrix matrix = build_matrix(train, canonical);

    Model model;
    // The stored spec keeps only the block that shaped this model, so
    // serialization round-trips are exact.
    model.spec.algorithm = spec.algorithm;
    model.spec.seed = spec.seed;
    switch (spec.algorithm) {
    case Algorithm::DecisionTree: model.spec.dt = spec.dt; break;
    case Algorithm::RandomForest: model.spec.rf = spec.rf; break;
    case Algorithm::LogisticRegression: model.spec.lr = spec.lr; break;
    case Algorithm::LinearSVM: model.spec.svm = spec.svm; break;
    }
    model.class_ids = matrix.class_ids;

    switch (spec.algorithm) {
    case Algorithm::DecisionTree: {
        detail::TreeBuildConfig config{spec.dt.max_depth, spec.dt.min_leaf, 0};
        std::vector<std::size_t> indices(matrix.x.size());
        std::iota(indices.begin(), indices.end(), std::size_t{0});
        model.tree = detail::build_cart_tree(matrix.x, matrix.y, std::move(indices), config,
                                             nullptr);
        break;
    }
    case Algorithm::RandomForest: {
        detail::TreeBuildConfig config{spec.rf.max_depth, spec.rf.min_leaf,
                                       forest_feature_count(spec.rf)};
        auto trees = static_cast<std::size_t>(std::max(spec.rf.trees, 1));
        model.forest.trees.resize(trees);
        if (jobs <= 0) jobs = omp_get_max_threads();
        auto count = static_cast<std::int64_t>(trees);
        // Each tree derives its own stream, so results do not depend on
        // the schedule.
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (std::int64_t t = 0; t < count; ++t) {
            Rng rng(derive_seed(spec.seed, kForestStream, static_cast<std::uint64_t>(t)));
            std::vector<std::size_t> sample(matrix.x.size());
            for (std::size_t& s : sample) {
                s = static_cast<std::size_t>(rng.below(matrix.x.size()));
            }
            model.forest.trees[static_cast<std::size_t>(t)] =
                detail::build_cart_tree(matrix.x, matrix.y, std::move(sample), config, &rng);
        }
        break;
    }
    case Algorithm::LogisticRegression: {
        model.linear.scaler = detail::fit_scaler(matrix.x);
        for (auto& row : matrix.x) row = model.linear.scaler.transform(row);
        model.linear.weights =
            detail::fit_softmax(matrix.x, positions_in_class_ids(matrix.y, matrix.class_ids),
                                matrix.class_ids.size(), spec.lr);
        break;
    }
    case Algorithm::LinearSVM: {
        model.linear.scaler = detail::fit_scaler(matrix.x);
        for (auto& row : matrix.x) row = model.linear.scaler.transform(row);
        model.linear.weights =
            detail::fit_ovr_svm(matrix.x, positions_in_class_ids(matrix.y, matrix.class_ids),
                                matrix.class_ids.size(), spec.svm);
        break;
    }
    }
    return model;
}

IntentLabel predict(const Model& model, const FeatureVector& x) {
    auto values = x.to_array();
    switch (model.spec.algorithm) {
    case Algorithm::DecisionTree:
        return kTrainingClasses[static_cast<std::size_t>(model.tree.predict_class(values))];
    case Algorithm::RandomForest: {
        std::array<int, 3> votes{};
        for (const DecisionTreeModel& tree : model.forest.trees) {
            ++votes[static_cast<std::size_t>(tree.predict_class(values))];
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < 3; ++c) {
            if (votes[c] > votes[best]) best = c;
        }
        return kTrainingClasses[best];
    }
    case Algorithm::LogisticRegression:
    case Algorithm::LinearSVM: {
        auto scaled = model.linear.scaler.transform(values);
        std::size_t best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < model.linear.weights.size(); ++k) {
            double score = model.linear.weights[k][kFeatureCount];
            for (std::size_t f = 0; f < kFeatureCount; ++f) {
                score += model.linear.weights[k][f] * scaled[f];
            }
            if (score > best_score) {
                best_score = score;
                best = k;
            }
        }
        return kTrainingClasses[static_cast<std::size_t>(model.class_ids[best])];
    }
    }
    return kTrainingClasses[0];
}

std::vector<IntentLabel> predict(const Model& model, const std::vector<DatasetRow>& rows) {
    std::vector<IntentLabel> labels;
    labels.reserve(rows.size());
    for (const DatasetRow& row : rows) labels.push_back(predict(model, row.features));
    return labels;
}

void serialize_model(std::ostream& out, const Model& model) {
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "algorithm " << to_string(model.spec.algorithm) << '\n';
    out << "seed " << model.spec.seed << '\n';
    out << "classes " << model.class_ids.size();
    for (int id : model.class_ids) out << ' ' << id;
    out << '\n';
    switch (model.spec.algorithm) {
    case Algorithm::DecisionTree:
        out << "dt " << model.spec.dt.max_depth << ' ' << model.spec.dt.min_leaf << '\n';
        write_tree(out, model.tree);
        break;
    case Algorithm::RandomForest:
        out << "rf " << model.spec.rf.trees << ' ' << model.spec.rf.max_depth << ' '
            << model.spec.rf.min_leaf << ' ' << model.spec.rf.features_per_split << '\n';
        out << "forest " << model.forest.trees.size() << '\n';
        for (const DecisionTreeModel& tree : model.forest.trees) write_tree(out, tree);
        break;
    case Algorithm::LogisticRegression:
        out << "lr " << hex_double(model.spec.lr.lambda) << ' ' << model.spec.lr.iterations
            << ' ' << hex_double(model.spec.lr.step) << '\n';
        write_scaler(out, model.linear.scaler);
        out << "linear " << model.linear.weights.size() << '\n';
        for (const auto& row : model.linear.weights) {
            out << "row";
            for (double w : row) out << ' ' << hex_double(w);
            out << '\n';
        }
        break;
    case Algorithm::LinearSVM:
        out << "svm " << hex_double(model.spec.svm.c) << ' ' << model.spec.svm.epochs << '\n';
        write_scaler(out, model.linear.scaler);
        out << "linear " << model.linear.weights.size() << '\n';
        for (const auto& row : model.linear.weights) {
            out << "row";
            for (double w : row) out << ' ' << hex_double(w);
            out << '\n';
        }
        break;
    }
    out << "end\n";
}

Model deserialize_model(std::istream& in) {
    expect_token(in, kModelMagic);
    if (read_int(in, "version") != kModelVersion) {
        throw ParseError("model: unsupported version");
    }
    Model model;
    expect_token(in, "algorithm");
    std::string algorithm = read_token(in, "algorithm");
    auto parsed = parse_algorithm(algorithm);
    if (!parsed) throw ParseError("model: unknown algorithm '" + algorithm + "'");
    model.spec.algorithm = *parsed;

    expect_token(in, "seed");
    model.spec.seed = static_cast<std::uint64_t>(read_int(in, "seed"));

    expect_token(in, "classes");
    auto class_count = read_int(in, "class count");
    if (class_count < 1 || class_count > 3) throw ParseError("model: bad class count");
    for (long long i = 0; i < class_count; ++i) {
        auto id = read_int(in, "class id");
        if (id < 0 || id > 2) throw ParseError("model: class id out of range");
        model.class_ids.push_back(static_cast<int>(id));
    }

    switch (model.spec.algorithm) {
    case Algorithm::DecisionTree:
        expect_token(in, "dt");
        model.spec.dt.max_depth = static_cast<int>(read_int(in, "max_depth"));
        model.spec.dt.min_leaf = static_cast<int>(read_int(in, "min_leaf"));
        model.tree = read_tree(in);
        break;
    case Algorithm::RandomForest: {
        expect_token(in, "rf");
        model.spec.rf.trees = static_cast<int>(read_int(in, "trees"));
        model.spec.rf.max_depth = static_cast<int>(read_int(in, "max_depth"));
        model.spec.rf.min_leaf = static_cast<int>(read_int(in, "min_leaf"));
        model.spec.rf.features_per_split = static_cast<int>(read_int(in, "features_per_split"));
        expect_token(in, "forest");
        auto trees = read_int(in, "tree count");
        if (trees < 0) throw ParseError("model: negative tree count");
        model.forest.trees.reserve(static_cast<std::size_t>(trees));
        for (long long t = 0; t < trees; ++t) model.forest.trees.push_back(read_tree(in));
        break;
    }
    case Algorithm::LogisticRegression:
        expect_token(in, "lr");
        model.spec.lr.lambda = parse_hex_double(read_token(in, "lambda"), "lambda");
        model.spec.lr.iterations = static_cast<int>(read_int(in, "iterations"));
        model.spec.lr.step = parse_hex_double(read_token(in, "step"), "step");
        model.linear.scaler = read_scaler(in);
        break;
    case Algorithm::LinearSVM:
        expect_token(in, "svm");
        model.spec.svm.c = parse_hex_double(read_token(in, "c"), "c");
        model.spec.svm.epochs = static_cast<int>(read_int(in, "epochs"));
        model.linear.scaler = read_scaler(in);
        break;
    }
    if (model.spec.algorithm == Algorithm::LogisticRegression ||
        model.spec.algorithm == Algorithm::LinearSVM) {
        expect_token(in, "linear");
        auto rows = read_int(in, "row count");
        if (rows < 0) throw ParseError("model: negative row count");
        for (long long r = 0; r < rows; ++r) {
            expect_token(in, "row");
            std::array<double, kFeatureCount + 1> row{};
            for (double& w : row) w = parse_hex_double(read_token(in, "weight"), "weight");
            model.linear.weights.push_back(row);
        }
    }
    expect_token(in, "end");
    return model;
}

} // namespace intent
