// Compares the serial reference implementations against the OpenMP
// kernels on a synthetic corpus: feature extraction, information-gain
// ranking, and random-forest training. Verifies that parallel and
// serial results agree before reporting timings.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>

#include <omp.h>

#include "intent/dataset.hpp"
#include "intent/features.hpp"
#include "intent/information_gain.hpp"
#include "intent/learn.hpp"
#include "intent/model.hpp"
#include "intent/synthetic.hpp"

namespace {

double time_call(const std::function<void()>& fn) {
    double start = omp_get_wtime();
    fn();
    return omp_get_wtime() - start;
}

std::string model_bytes(const intent::Model& model) {
    std::ostringstream out;
    intent::serialize_model(out, model);
    return out.str();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs  parallel %8.3fs  speedup %5.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    std::size_t per_class = 700;
    if (argc > 1) per_class = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
    int threads = omp_get_max_threads();

    intent::SyntheticSpec spec;
    spec.informational = per_class;
    spec.navigational = per_class;
    spec.transactional = per_class;
    spec.seed = 20240901;
    intent::LogCorpus corpus = intent::generate_synthetic_corpus(spec);
    std::printf("corpus: %zu missions, %zu queries, %d threads\n", corpus.stats.missions,
                corpus.stats.queries, threads);

    std::vector<intent::FeatureRow> serial_rows, parallel_rows;
    double t_serial = time_call([&] {
        serial_rows = intent::featurize_corpus_serial(corpus, intent::Granularity::Mission);
    });
    double t_parallel = time_call([&] {
        parallel_rows = intent::featurize_corpus(corpus, intent::Granularity::Mission, threads);
    });
    if (serial_rows.size() != parallel_rows.size()) {
        std::fprintf(stderr, "featurize mismatch: row counts differ\n");
        return 1;
    }
    for (std::size_t i = 0; i < serial_rows.size(); ++i) {
        if (serial_rows[i].unit_id != parallel_rows[i].unit_id ||
            serial_rows[i].features.to_array() != parallel_rows[i].features.to_array()) {
            std::fprintf(stderr, "featurize mismatch at row %zu\n", i);
            return 1;
        }
    }
    report("featurize", t_serial, t_parallel);

    intent::LabeledDataset dataset =
        intent::make_dataset(serial_rows, intent::Granularity::Mission);

    std::vector<intent::RankedFeature> serial_rank, parallel_rank;
    double r_serial = time_call([&] {
        serial_rank = intent::rank_features_serial(dataset, intent::Discretizer::MdlStopping);
    });
    double r_parallel = time_call([&] {
        parallel_rank = intent::rank_features(dataset, intent::Discretizer::MdlStopping, threads);
    });
    for (std::size_t i = 0; i < serial_rank.size(); ++i) {
        if (serial_rank[i].name != parallel_rank[i].name ||
            serial_rank[i].gain != parallel_rank[i].gain) {
            std::fprintf(stderr, "ranking mismatch at position %zu\n", i);
            return 1;
        }
    }
    report("information gain ranking", r_serial, r_parallel);

    intent::ModelSpec forest_spec;
    forest_spec.algorithm = intent::Algorithm::RandomForest;
    forest_spec.rf.trees = 100;
    forest_spec.seed = 7;
    intent::Model serial_forest, parallel_forest;
    double f_serial = time_call([&] { serial_forest = intent::fit(forest_spec, dataset, 1); });
    double f_parallel =
        time_call([&] { parallel_forest = intent::fit(forest_spec, dataset, threads); });
    if (model_bytes(serial_forest) != model_bytes(parallel_forest)) {
        std::fprintf(stderr, "forest mismatch between serial and parallel fit\n");
        return 1;
    }
    report("random forest fit", f_serial, f_parallel);

    intent::CvOptions options;
    options.folds = 10;
    options.seed = 13;
    options.jobs = 1;
    intent::EvalReport serial_cv, parallel_cv;
    double c_serial = time_call([&] {
        serial_cv = intent::cross_validate(intent::Algorithm::DecisionTree, {}, dataset, options);
    });
    options.jobs = threads;
    double c_parallel = time_call([&] {
        parallel_cv = intent::cross_validate(intent::Algorithm::DecisionTree, {}, dataset, options);
    });
    if (intent::report_to_json(serial_cv) != intent::report_to_json(parallel_cv)) {
        std::fprintf(stderr, "cross-validation mismatch between job counts\n");
        return 1;
    }
    report("decision tree 10-fold CV", c_serial, c_parallel);

    std::printf("all parallel results match serial references\n");
    return 0;
}
