// End-to-end tests driving the installed binary through a shell, the
// way a user would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "intent/ingest.hpp"
#include "intent/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "searchintent-cli-test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run(const std::string& args) {
    static int counter = 0;
    fs::path out_file = scratch_dir() / ("out" + std::to_string(counter++) + ".txt");
    std::string cmd = std::string(SEARCHINTENT_BIN) + " " + args + " >" + out_file.string() +
                      " 2>" + out_file.string() + ".err";
    int status = std::system(cmd.c_str());
    RunResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.out = buffer.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text) {
        if (c == '\n') ++lines;
    }
    return lines;
}

// A small labeled synthetic corpus written as the TSV trio, shared
// across the experiment/rank/compare cases.
fs::path synthetic_corpus_dir() {
    static fs::path dir = [] {
        fs::path d = scratch_dir() / "syn";
        fs::create_directories(d);
        intent::SyntheticSpec spec;
        spec.informational = 20;
        spec.navigational = 20;
        spec.transactional = 20;
        spec.seed = 2023;
        intent::LogCorpus corpus = intent::generate_synthetic_corpus(spec);
        std::ofstream q(d / "queries.tsv"), c(d / "clicks.tsv"), l(d / "labels.tsv");
        intent::write_query_log(q, corpus);
        intent::write_click_log(c, corpus);
        intent::write_labels(l, corpus);
        return d;
    }();
    return dir;
}

std::string fixture() {
    return std::string(FIXTURE_DIR) + "/table1";
}

// Feature CSV for the shared synthetic corpus, produced by the binary
// itself once per test run.
fs::path features_csv() {
    static fs::path path = [] {
        fs::path p = scratch_dir() / "features.csv";
        std::string cmd = std::string(SEARCHINTENT_BIN) + " featurize " +
                          synthetic_corpus_dir().string() + " --out " + p.string() +
                          " 2>/dev/null";
        REQUIRE(std::system(cmd.c_str()) == 0);
        return p;
    }();
    return path;
}

} // namespace

TEST_CASE("help exits zero, usage errors exit two") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("featurize --help").exit_code == 0);
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("featurize").exit_code == 2);
    CHECK(run("featurize /no/such/dir").exit_code == 2);
    CHECK(run("featurize " + fixture() + " --granularity bogus").exit_code == 2);
    CHECK(run("experiment --features /no/such/file.csv").exit_code == 2);
}

TEST_CASE("featurize emits one row per unit at each granularity") {
    auto missions = run("featurize " + fixture());
    CHECK(missions.exit_code == 0);
    CHECK(line_count(missions.out) == 4); // header + 3 missions
    CHECK(missions.out.find("M1,informational") != std::string::npos);

    auto sessions = run("featurize " + fixture() + " --granularity logical");
    CHECK(sessions.exit_code == 0);
    CHECK(line_count(sessions.out) == 9); // header + 8 sessions

    // Byte-determinism across runs and thread counts.
    auto again = run("featurize " + fixture() + " --jobs 4");
    CHECK(again.out == missions.out);
}

TEST_CASE("featurize fails cleanly on corrupt data") {
    fs::path bad = scratch_dir() / "bad";
    fs::create_directories(bad);
    std::ofstream(bad / "queries.tsv")
        << "user_id\tquery\ttimestamp\tmission_id\tlogical_session_id\tphysical_session_id\n"
        << "u1\tq\tnot-a-time\tM1\tL1\tP1\n";
    auto result = run("featurize " + bad.string());
    CHECK(result.exit_code == 1);
}

TEST_CASE("experiment writes identical JSON regardless of job count") {
    fs::path features = features_csv();
    fs::path json1 = scratch_dir() / "r1.json";
    fs::path json2 = scratch_dir() / "r2.json";
    std::string base = "experiment --features " + features.string() +
                       " --algorithms dt,svm --folds 3 --seed 9";
    CHECK(run(base + " --jobs 1 --out " + json1.string()).exit_code == 0);
    CHECK(run(base + " --jobs 4 --out " + json2.string()).exit_code == 0);

    std::string a = slurp(json1);
    CHECK(a == slurp(json2));
    CHECK(a.find("\"reports\"") != std::string::npos);
    CHECK(a.find("\"algorithm\": \"dt\"") != std::string::npos);
    CHECK(a.find("\"algorithm\": \"svm\"") != std::string::npos);
    CHECK(a.find("\"jobs\"") == std::string::npos);
}

TEST_CASE("experiment honors a config file with flag precedence") {
    fs::path features = features_csv();
    fs::path cfg = scratch_dir() / "exp.cfg";
    std::ofstream(cfg) << "folds=3\nalgorithms=dt\nseed=9\n";

    fs::path json1 = scratch_dir() / "cfg1.json";
    auto from_cfg = run("experiment --features " + features.string() + " --config " +
                        cfg.string() + " --out " + json1.string());
    CHECK(from_cfg.exit_code == 0);
    std::string body = slurp(json1);
    CHECK(body.find("\"folds\": 3") != std::string::npos);
    CHECK(body.find("\"algorithm\": \"dt\"") != std::string::npos);
    CHECK(body.find("\"algorithm\": \"svm\"") == std::string::npos);

    // An explicit flag wins over the config value.
    fs::path json2 = scratch_dir() / "cfg2.json";
    auto overridden = run("experiment --features " + features.string() + " --config " +
                          cfg.string() + " --folds 5 --out " + json2.string());
    CHECK(overridden.exit_code == 0);
    CHECK(slurp(json2).find("\"folds\": 5") != std::string::npos);

    // Boolean flags work as key=value; comments and blank lines are skipped.
    fs::path flag_cfg = scratch_dir() / "flag.cfg";
    std::ofstream(flag_cfg) << "# experiment manifest\n\nbalanced=true\nfolds=3\nalgorithms=dt\n";
    fs::path json3 = scratch_dir() / "cfg3.json";
    auto flagged = run("experiment --features " + features.string() + " --config " +
                       flag_cfg.string() + " --out " + json3.string());
    CHECK(flagged.exit_code == 0);
    CHECK(slurp(json3).find("\"balanced\": true") != std::string::npos);

    // A misspelled key is a usage error, not a silent no-op.
    fs::path bad_cfg = scratch_dir() / "bad.cfg";
    std::ofstream(bad_cfg) << "fodls=3\n";
    auto rejected = run("experiment --features " + features.string() + " --config " +
                        bad_cfg.string());
    CHECK(rejected.exit_code == 2);
}

TEST_CASE("rank emits all features in gain order") {
    fs::path features = features_csv();
    auto result = run("rank --features " + features.string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.rfind("feature,information_gain\n", 0) == 0);
    CHECK(line_count(result.out) == 23); // header + 22 features

    auto eqfreq = run("rank --features " + features.string() + " --discretizer eqfreq");
    CHECK(eqfreq.exit_code == 0);
    CHECK(line_count(eqfreq.out) == 23);
}

TEST_CASE("compare runs both granularities on one corpus") {
    fs::path out = scratch_dir() / "compare.json";
    auto result = run("compare " + synthetic_corpus_dir().string() +
                      " --algorithm dt --folds 3 --out " + out.string());
    CHECK(result.exit_code == 0);
    std::string body = slurp(out);
    CHECK(body.find("\"granularity\": \"mission\"") != std::string::npos);
    CHECK(body.find("\"granularity\": \"logical_session\"") != std::string::npos);
}

TEST_CASE("convert produces the TSV trio and a stats line") {
    fs::path native = scratch_dir() / "native";
    fs::create_directories(native);
    std::ofstream(native / "log.tsv")
        << "AnonID\tQuery\tQueryTime\tItemRank\tClickURL\tMissionID\tSessionID\tLabel\n"
        << "7\tcheap flights\t2006-03-01 10:00:00\t1\thttp://www.expedia.com\t1\t1\t"
           "transactional\n"
        << "7\tcheap flights\t2006-03-01 10:00:00\t4\thttp://www.kayak.com\t1\t1\ttransactional\n"
        << "7\tbbc news\t2006-03-02 09:00:00\t1\thttp://news.bbc.co.uk\t2\t2\tnavigational\n";
    fs::path out_dir = scratch_dir() / "converted";
    auto result = run("convert " + native.string() + " --out-dir " + out_dir.string());
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("2 queries / 1 users / 2 logical sessions / 2 missions") !=
          std::string::npos);
    CHECK(fs::exists(out_dir / "queries.tsv"));
    CHECK(fs::exists(out_dir / "clicks.tsv"));
    CHECK(fs::exists(out_dir / "labels.tsv"));

    // The converted trio feeds straight back into featurize.
    auto featurized = run("featurize " + out_dir.string());
    CHECK(featurized.exit_code == 0);
    CHECK(line_count(featurized.out) == 3);

    auto empty = run("convert " + (scratch_dir() / "nothing-here").string());
    CHECK(empty.exit_code == 2);
}

TEST_CASE("missing click log downgrades to a warning") {
    fs::path partial = scratch_dir() / "partial";
    fs::create_directories(partial);
    fs::copy_file(fs::path(fixture()) / "queries.tsv", partial / "queries.tsv",
                  fs::copy_options::overwrite_existing);
    auto result = run("featurize " + partial.string());
    CHECK(result.exit_code == 0);
    CHECK(line_count(result.out) == 4);
    // All browsing counts are zero without a click log.
    CHECK(result.out.find("M2,") != std::string::npos);
}

TEST_CASE("experiment rejects too many folds for the data") {
    fs::path features = scratch_dir() / "tiny.csv";
    CHECK(run("featurize " + fixture() + " --out " + features.string()).exit_code == 0);
    auto result = run("experiment --features " + features.string() + " --folds 10");
    CHECK(result.exit_code == 1);
}
