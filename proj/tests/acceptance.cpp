// Acceptance gate: one line per criterion, PASS/FAIL/SKIP, nonzero exit
// when any criterion fails. Each criterion is independent; a throw
// inside one marks only that criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "intent/convert.hpp"
#include "intent/dataset.hpp"
#include "intent/features.hpp"
#include "intent/information_gain.hpp"
#include "intent/ingest.hpp"
#include "intent/learn.hpp"
#include "intent/metrics.hpp"
#include "intent/model.hpp"
#include "intent/report.hpp"
#include "intent/rng.hpp"
#include "intent/similarity.hpp"
#include "intent/synthetic.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void require(bool condition, const std::string& detail) {
    if (!condition) throw std::runtime_error(detail);
}

void criterion(int number, const std::string& name, const std::function<void()>& body) {
    try {
        body();
        std::printf("PASS criterion %d: %s\n", number, name.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("FAIL criterion %d: %s (%s)\n", number, name.c_str(), e.what());
    }
    std::fflush(stdout);
}

void skip(int number, const std::string& name, const std::string& why) {
    std::printf("SKIP criterion %d: %s (%s)\n", number, name.c_str(), why.c_str());
    std::fflush(stdout);
}

intent::LogCorpus load_fixture() {
    fs::path dir = fs::path(FIXTURE_DIR) / "table1";
    std::ifstream queries(dir / "queries.tsv");
    require(static_cast<bool>(queries), "fixture queries.tsv unreadable");
    auto events = intent::parse_query_log(queries);
    std::ifstream clicks(dir / "clicks.tsv");
    require(static_cast<bool>(clicks), "fixture clicks.tsv unreadable");
    intent::parse_click_log(clicks, events);
    std::ifstream labels_in(dir / "labels.tsv");
    require(static_cast<bool>(labels_in), "fixture labels.tsv unreadable");
    auto labels = intent::parse_labels(labels_in);
    return intent::assemble_corpus(std::move(events), labels);
}

intent::LabeledDataset synthetic_dataset(std::size_t per_class, std::uint64_t seed) {
    intent::SyntheticSpec spec;
    spec.informational = per_class;
    spec.navigational = per_class;
    spec.transactional = per_class;
    spec.seed = seed;
    auto corpus = intent::generate_synthetic_corpus(spec);
    auto rows = intent::featurize_corpus(corpus, intent::Granularity::Mission, 0);
    return intent::make_dataset(rows, intent::Granularity::Mission);
}

std::string random_text(intent::Rng& rng, std::size_t max_len) {
    static const std::string alphabet = "abcdefgh .";
    std::size_t len = static_cast<std::size_t>(rng.below(max_len + 1));
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    return s;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "searchintent-acceptance";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(SEARCHINTENT_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void check_criterion_1() {
    auto start = std::chrono::steady_clock::now();
    auto corpus = load_fixture();
    require(corpus.stats.missions == 3, "expected 3 missions");
    require(corpus.stats.logical_sessions == 8, "expected 8 logical sessions");

    const intent::Mission* m1 = corpus.find_mission("M1");
    require(m1 != nullptr, "mission M1 missing");
    require(m1->sessions.size() == 5, "M1 should have 5 logical sessions");
    std::set<std::string> physical;
    for (const auto& session : m1->sessions) {
        for (const auto& query : session.queries) physical.insert(query.physical_session_id);
    }
    require(physical.size() == 4, "M1 should span 4 physical sessions");

    auto fv = intent::extract_all(*m1);
    require(fv.m.m_queries == 8, "m_queries(M1) should be 8");
    require(fv.m.m_duration_incl_break == 98694.0, "m_duration_incl_break(M1) should be 98694");

    auto elapsed = std::chrono::steady_clock::now() - start;
    require(elapsed < std::chrono::seconds(1), "criterion must finish in under 1 s");
}

bool check_criterion_2(const fs::path& corpus_dir) {
    auto start = std::chrono::steady_clock::now();
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    require(!files.empty(), "corpus directory is empty");

    intent::NativeLogBuilder builder;
    for (const auto& file : files) {
        std::ifstream in(file);
        require(static_cast<bool>(in), "cannot read " + file.string());
        builder.consume(in, file.filename().string());
    }
    auto corpus = builder.finish();
    require(corpus.stats.queries == 8840,
            "queries: got " + std::to_string(corpus.stats.queries) + ", want 8840");
    require(corpus.stats.users == 127,
            "users: got " + std::to_string(corpus.stats.users) + ", want 127");
    require(corpus.stats.logical_sessions == 2881,
            "logical sessions: got " + std::to_string(corpus.stats.logical_sessions) +
                ", want 2881");
    require(corpus.stats.missions == 1378,
            "missions: got " + std::to_string(corpus.stats.missions) + ", want 1378");
    require(std::chrono::steady_clock::now() - start < std::chrono::seconds(30),
            "criterion must finish in under 30 s");
    return true;
}

void check_criterion_3() {
    auto data = synthetic_dataset(30, 20240915);
    require(data.rows.size() == 90, "expected 90 labeled missions");

    std::vector<intent::EvalReport> reports;
    for (bool balanced : {false, true}) {
        for (intent::Algorithm algorithm : intent::kAlgorithms) {
            intent::CvOptions options;
            options.folds = 10;
            options.balanced = balanced;
            options.seed = 42;
            options.jobs = 0;
            auto report = intent::cross_validate(algorithm, {}, data, options);
            require(report.summary.accuracy >= 0.90,
                    std::string(intent::to_string(algorithm)) +
                        (balanced ? " balanced" : " unbalanced") + " accuracy " +
                        std::to_string(report.summary.accuracy) + " < 0.90");
            reports.push_back(std::move(report));
        }
    }

    // The full report surface renders: per-class P/R/F1, weighted row,
    // accuracy, in table, CSV, and JSON form.
    std::ostringstream table;
    intent::print_report_table(table, reports);
    require(table.str().find("Accu") != std::string::npos, "table output incomplete");
    std::string csv = intent::report_csv_header();
    for (const auto& report : reports) {
        require(!intent::report_csv_row(report).empty(), "CSV row empty");
    }
    require(std::count(csv.begin(), csv.end(), ',') >= 16, "CSV header too narrow");
    std::string json = intent::reports_to_json(reports);
    require(json.find("\"accuracy\"") != std::string::npos, "JSON report incomplete");
}

void check_criterion_4() {
    intent::Rng rng(0xACCE5504);
    for (int i = 0; i < 1000; ++i) {
        std::string a = random_text(rng, 12);
        std::string b = random_text(rng, 12);
        require(intent::levenshtein(a, b) == oracle::levenshtein(a, b),
                "levenshtein mismatch on '" + a + "' vs '" + b + "'");
    }
    for (int i = 0; i < 1000; ++i) {
        std::string a = random_text(rng, 12);
        std::string b = random_text(rng, 12);
        for (std::size_t n : {std::size_t{3}, std::size_t{4}}) {
            double got = intent::char_ngram_cosine(a, b, n);
            double want = oracle::ngram_cosine(a, b, n);
            require(std::abs(got - want) <= 1e-12,
                    "cosine mismatch on '" + a + "' vs '" + b + "'");
        }
    }
    require(intent::levenshtein("footbal lisbon", "football lisbon") == 1,
            "known edit distance should be 1");
}

void check_criterion_5() {
    intent::SyntheticSpec spec;
    spec.informational = 3334;
    spec.navigational = 3334;
    spec.transactional = 3334;
    spec.seed = 0xF022ED;
    auto corpus = intent::generate_synthetic_corpus(spec);
    require(corpus.stats.missions >= 10000, "need at least 10000 missions");

    std::size_t violations = 0;
    auto rows = intent::featurize_corpus(corpus, intent::Granularity::Mission, 0);
    for (const auto& row : rows) {
        const auto& fv = row.features;
        violations += intent::check_feature_invariants(fv).size();
        if (!(fv.q.q_min <= fv.q.q_avg && fv.q.q_avg <= fv.q.q_max)) ++violations;
        if (fv.b.b_click != fv.b.b_unique + fv.b.b_revisit) ++violations;
        for (double s : {fv.q.q_cos3, fv.q.q_cos4, fv.b.b_cos3, fv.b.b_cos4}) {
            if (!(s >= 0.0 && s <= 1.0)) ++violations;
        }
        if (!(fv.m.m_duration_excl_break <= fv.m.m_duration_incl_break)) ++violations;
        if (!(fv.m.m_queries >= fv.m.m_logical)) ++violations;
    }
    require(violations == 0, std::to_string(violations) + " invariant violations");
}

void check_criterion_6() {
    intent::Rng rng(0x6E7216);
    for (int trial = 0; trial < 100; ++trial) {
        intent::ConfusionMatrix cm;
        for (int t = 0; t < 3; ++t) {
            for (int p = 0; p < 3; ++p) {
                cm.add(intent::kTrainingClasses[static_cast<std::size_t>(t)],
                       intent::kTrainingClasses[static_cast<std::size_t>(p)],
                       static_cast<std::int64_t>(rng.below(50)));
            }
        }
        if (cm.total() == 0) {
            cm.add(intent::IntentLabel::Informational, intent::IntentLabel::Informational);
        }
        auto summary = intent::metrics(cm);
        require(std::abs(summary.weighted.recall - summary.accuracy) <= 1e-12,
                "weighted recall deviates from accuracy");
    }

    intent::ConfusionMatrix diagonal;
    diagonal.add(intent::IntentLabel::Informational, intent::IntentLabel::Informational, 7);
    diagonal.add(intent::IntentLabel::Navigational, intent::IntentLabel::Navigational, 5);
    diagonal.add(intent::IntentLabel::Transactional, intent::IntentLabel::Transactional, 3);
    auto summary = intent::metrics(diagonal);
    require(summary.accuracy == 1.0, "diagonal accuracy should be 1");
    for (const auto& cls : summary.per_class) {
        require(cls.precision == 1.0 && cls.recall == 1.0 && cls.f1 == 1.0,
                "diagonal per-class metrics should all be 1");
    }
    require(summary.weighted.f1 == 1.0, "diagonal weighted f1 should be 1");
}

intent::LabeledDataset indicator_dataset(const std::array<std::size_t, 3>& sizes) {
    intent::LabeledDataset data;
    std::size_t seq = 0;
    for (int cls = 0; cls < 3; ++cls) {
        for (std::size_t i = 0; i < sizes[static_cast<std::size_t>(cls)]; ++i) {
            intent::DatasetRow row;
            row.unit_id = "r" + std::to_string(seq++);
            std::array<double, intent::kFeatureCount> values{};
            values[0] = cls;
            row.features = intent::FeatureVector::from_array(values);
            row.label = intent::kTrainingClasses[static_cast<std::size_t>(cls)];
            data.rows.push_back(row);
        }
    }
    return data;
}

void check_criterion_7() {
    auto two_class = indicator_dataset({50, 50, 0});
    double bit = intent::information_gain(two_class, 0);
    require(std::abs(bit - 1.0) <= 1e-9,
            "perfect binary feature should gain 1 bit, got " + std::to_string(bit));

    auto skewed = indicator_dataset({454, 275, 184});
    require(intent::information_gain(skewed, 5) == 0.0, "constant feature should gain 0");

    double gain = intent::information_gain(skewed, 0);
    double total = 454.0 + 275.0 + 184.0;
    double expected = 0.0;
    for (double count : {454.0, 275.0, 184.0}) {
        double p = count / total;
        expected -= p * std::log2(p);
    }
    require(std::abs(gain - expected) <= 1e-3,
            "class-index gain " + std::to_string(gain) + " vs direct entropy " +
                std::to_string(expected));
}

void check_criterion_8() {
    auto data = synthetic_dataset(30, 20240916);
    intent::CvOptions options;
    options.folds = 10;
    options.balanced = true;
    options.seed = 7;
    options.jobs = 0;
    intent::CvDiagnostics diagnostics;
    intent::cross_validate(intent::Algorithm::DecisionTree, {}, data, options, &diagnostics);

    require(diagnostics.test_folds.size() == 10, "expected 10 folds");
    std::set<std::size_t> seen;
    std::array<std::vector<std::size_t>, 3> per_class_counts;
    for (std::size_t f = 0; f < diagnostics.test_folds.size(); ++f) {
        std::array<std::size_t, 3> counts{};
        for (std::size_t index : diagnostics.test_folds[f]) {
            require(index < data.rows.size(), "fold index out of range");
            require(seen.insert(index).second, "folds overlap");
            ++counts[static_cast<std::size_t>(intent::class_index(data.rows[index].label))];
        }
        require(counts == diagnostics.folds[f].test_class_counts,
                "scored fold class counts diverge from the partition (balancing leaked)");
        for (int cls = 0; cls < 3; ++cls) {
            per_class_counts[static_cast<std::size_t>(cls)].push_back(
                counts[static_cast<std::size_t>(cls)]);
        }
    }
    require(seen.size() == data.rows.size(), "folds do not cover the dataset");
    for (const auto& counts : per_class_counts) {
        auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
        require(*hi - *lo <= 1, "stratification off by more than one");
    }
}

void check_criterion_9() {
    fs::path dir = scratch_dir();
    fs::path corpus_dir = dir / "corpus9";
    fs::create_directories(corpus_dir);
    intent::SyntheticSpec spec;
    spec.informational = 20;
    spec.navigational = 20;
    spec.transactional = 20;
    spec.seed = 99;
    auto corpus = intent::generate_synthetic_corpus(spec);
    std::ofstream q(corpus_dir / "queries.tsv"), c(corpus_dir / "clicks.tsv"),
        l(corpus_dir / "labels.tsv");
    intent::write_query_log(q, corpus);
    intent::write_click_log(c, corpus);
    intent::write_labels(l, corpus);
    q.close();
    c.close();
    l.close();

    fs::path features = dir / "features9.csv";
    require(run_binary("featurize " + corpus_dir.string() + " --out " + features.string()) == 0,
            "featurize failed");
    fs::path json1 = dir / "report9a.json";
    fs::path json2 = dir / "report9b.json";
    std::string base = "experiment --features " + features.string() + " --folds 5 --seed 1234";
    require(run_binary(base + " --jobs 1 --out " + json1.string()) == 0,
            "experiment run 1 failed");
    require(run_binary(base + " --jobs 4 --out " + json2.string()) == 0,
            "experiment run 2 failed");
    require(slurp(json1) == slurp(json2), "reports differ across --jobs");
    require(slurp(json1).find("\"reports\"") != std::string::npos, "report JSON malformed");
}

void check_criterion_10() {
    intent::SyntheticSpec spec;
    spec.informational = 15;
    spec.navigational = 15;
    spec.transactional = 15;
    spec.seed = 1010;
    auto corpus = intent::generate_synthetic_corpus(spec);

    intent::CvOptions options;
    options.folds = 5;
    options.seed = 10;
    options.jobs = 0;
    auto [mission, session] =
        intent::compare_granularity(corpus, intent::Algorithm::LinearSVM, options);

    require(mission.granularity == "mission", "first report must be mission-level");
    require(session.granularity == "logical_session", "second report must be session-level");
    require(mission.confusion.total() <= session.confusion.total(),
            "missions cannot outnumber logical sessions");

    // Identical schema: the two JSON objects expose the same key set.
    auto keys = [](const std::string& json) {
        std::set<std::string> found;
        std::size_t pos = 0;
        while ((pos = json.find('"', pos)) != std::string::npos) {
            std::size_t end = json.find('"', pos + 1);
            if (end == std::string::npos) break;
            if (end + 1 < json.size() && json[end + 1] == ':') {
                found.insert(json.substr(pos + 1, end - pos - 1));
            }
            pos = end + 1;
        }
        return found;
    };
    require(keys(intent::report_to_json(mission)) == keys(intent::report_to_json(session)),
            "mission and session reports expose different schemas");
}

} // namespace

int main() {
    criterion(1, "example-log golden fixture", check_criterion_1);

    fs::path corpus_dir;
    if (const char* env = std::getenv("WEBIS_SMC12_DIR"); env && *env) {
        corpus_dir = env;
    } else if (fs::is_directory(fs::path(REPO_DATA_DIR) / "webis-smc-12")) {
        corpus_dir = fs::path(REPO_DATA_DIR) / "webis-smc-12";
    }
    if (corpus_dir.empty() || !fs::is_directory(corpus_dir)) {
        skip(2, "public corpus statistics",
             "corpus not present; set WEBIS_SMC12_DIR to enable; criterion 1 stands in");
    } else {
        criterion(2, "public corpus statistics", [&] { check_criterion_2(corpus_dir); });
    }

    criterion(3, "synthetic-corpus accuracy across all four classifiers", check_criterion_3);
    criterion(4, "string-similarity oracles", check_criterion_4);
    criterion(5, "feature invariants over 10000 fuzzed missions", check_criterion_5);
    criterion(6, "metrics algebra", check_criterion_6);
    criterion(7, "information-gain reference points", check_criterion_7);
    criterion(8, "cross-validation fold hygiene", check_criterion_8);
    criterion(9, "byte-identical reports across thread counts", check_criterion_9);
    criterion(10, "granularity comparison harness", check_criterion_10);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
