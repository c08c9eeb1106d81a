// Command-line surface for the search-mission intent toolkit: convert
// native logs, compute features, run cross-validated experiments, rank
// features by information gain, and compare unit granularities.
//
// Exit codes: 0 success, 1 runtime/validation failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intent/convert.hpp"
#include "intent/dataset.hpp"
#include "intent/error.hpp"
#include "intent/features.hpp"
#include "intent/information_gain.hpp"
#include "intent/ingest.hpp"
#include "intent/learn.hpp"
#include "intent/log_model.hpp"
#include "intent/model.hpp"
#include "intent/report.hpp"
#include "intent/text.hpp"

namespace fs = std::filesystem;

namespace {

intent::Granularity granularity_from_flag(const std::string& value) {
    if (value == "logical" || value == "logical_session") {
        return intent::Granularity::LogicalSession;
    }
    return intent::Granularity::Mission;
}

intent::Algorithm algorithm_from_flag(const std::string& value) {
    auto algorithm = intent::parse_algorithm(value);
    if (!algorithm) throw intent::UsageError("unknown algorithm '" + value + "'");
    return *algorithm;
}

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw intent::UsageError("cannot read '" + path.string() + "'");
    return in;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw intent::Error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw intent::Error("failed writing '" + path.string() + "'");
}

std::string stats_line(const intent::CorpusStats& stats) {
    std::ostringstream line;
    line << stats.queries << " queries / " << stats.users << " users / "
         << stats.logical_sessions << " logical sessions / " << stats.missions << " missions";
    return line.str();
}

// Reads the queries/clicks/labels TSV trio. The click and label files
// are optional; strict mode turns mission invariant violations into a
// hard failure.
intent::LogCorpus load_corpus_dir(const fs::path& dir, bool lenient) {
    if (!fs::is_directory(dir)) {
        throw intent::UsageError("'" + dir.string() + "' is not a directory");
    }
    fs::path query_path = dir / "queries.tsv";
    if (!fs::exists(query_path)) {
        throw intent::UsageError("missing '" + query_path.string() + "'");
    }
    auto query_stream = open_input(query_path);
    auto queries = intent::parse_query_log(query_stream, query_path.filename().string());

    fs::path click_path = dir / "clicks.tsv";
    if (fs::exists(click_path)) {
        auto click_stream = open_input(click_path);
        intent::parse_click_log(click_stream, queries, click_path.filename().string());
    } else {
        std::cerr << "warning: no '" << click_path.string()
                  << "'; browsing features will see zero clicks\n";
    }

    intent::LabelMap labels;
    fs::path label_path = dir / "labels.tsv";
    if (fs::exists(label_path)) {
        auto label_stream = open_input(label_path);
        labels = intent::parse_labels(label_stream, label_path.filename().string());
    }

    intent::LogCorpus corpus = intent::assemble_corpus(std::move(queries), labels);

    std::size_t violation_count = 0;
    for (const intent::Mission& mission : corpus.missions) {
        for (const std::string& violation : intent::validate_mission(mission)) {
            std::cerr << (lenient ? "warning" : "error") << ": mission " << mission.id << ": "
                      << violation << '\n';
            ++violation_count;
        }
    }
    if (violation_count > 0 && !lenient) {
        throw intent::ValidationError(std::to_string(violation_count) +
                                      " mission invariant violations (use --lenient to proceed)");
    }
    return corpus;
}

intent::LabeledDataset load_dataset(const fs::path& features_path,
                                    intent::Granularity granularity) {
    auto in = open_input(features_path);
    auto rows = intent::read_feature_csv(in, features_path.filename().string());
    intent::LabeledDataset dataset = intent::make_dataset(rows, granularity);
    if (dataset.rows.empty()) {
        throw intent::ValidationError("no labeled rows in '" + features_path.string() + "'");
    }
    return dataset;
}

void emit_or_print(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_text_file(out_path, content);
    }
}

// Applies a flat key=value defaults file to the parsed subcommand.
// Options already given on the command line keep their values. Values
// flow through the option's own conversion and validators. Required
// inputs (file paths) cannot come from here; they are checked during
// argument parsing, before this runs.
void apply_config_file(CLI::App& sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw intent::UsageError("cannot read config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view text = intent::trim(line);
        if (text.empty() || text.front() == '#') continue;
        std::string where = path + ":" + std::to_string(lineno);
        auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw intent::UsageError(where + ": expected key=value");
        }
        std::string key(intent::trim(text.substr(0, eq)));
        std::string value(intent::trim(text.substr(eq + 1)));
        CLI::Option* opt = key.empty() ? nullptr : sub.get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") {
            throw intent::UsageError(where + ": unknown key '" + key + "'");
        }
        if (!opt->empty()) continue;
        try {
            if (opt->get_expected_min() == 0) {
                opt->add_result(opt->get_flag_value(key, value));
            } else {
                opt->add_result(value);
            }
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw intent::UsageError(where + ": " + e.what());
        }
    }
}

int run_convert(const std::string& input, const std::string& out_dir) {
    fs::path in_path(input);
    if (!fs::exists(in_path)) throw intent::UsageError("no such path '" + input + "'");

    std::vector<fs::path> files;
    if (fs::is_directory(in_path)) {
        for (const auto& entry : fs::directory_iterator(in_path)) {
            if (entry.is_regular_file()) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) throw intent::UsageError("no input files in '" + input + "'");
    } else {
        files.push_back(in_path);
    }

    intent::NativeLogBuilder builder;
    for (const fs::path& file : files) {
        auto in = open_input(file);
        builder.consume(in, file.filename().string());
    }
    if (builder.lines_consumed() == 0) {
        throw intent::UsageError("input contains no data rows");
    }
    intent::LogCorpus corpus = builder.finish();

    fs::create_directories(out_dir);
    std::ostringstream queries, clicks, labels;
    intent::write_query_log(queries, corpus);
    intent::write_click_log(clicks, corpus);
    intent::write_labels(labels, corpus);
    write_text_file(fs::path(out_dir) / "queries.tsv", queries.str());
    write_text_file(fs::path(out_dir) / "clicks.tsv", clicks.str());
    write_text_file(fs::path(out_dir) / "labels.tsv", labels.str());

    std::cout << stats_line(corpus.stats) << '\n';
    return 0;
}

int run_featurize(const std::string& dir, const std::string& granularity, bool lenient,
                  int jobs, const std::string& out) {
    intent::LogCorpus corpus = load_corpus_dir(dir, lenient);
    std::cerr << stats_line(corpus.stats) << '\n';
    auto rows = intent::featurize_corpus(corpus, granularity_from_flag(granularity), jobs);
    std::ostringstream csv;
    intent::write_feature_csv(csv, rows);
    emit_or_print(csv.str(), out);
    std::cerr << "featurized " << rows.size() << " units\n";
    return 0;
}

int run_experiment(const std::string& features, const std::vector<std::string>& algorithms,
                   bool balanced, std::size_t folds, std::uint64_t seed, int jobs,
                   const std::string& granularity, const std::string& out,
                   const std::string& csv_out) {
    intent::LabeledDataset dataset = load_dataset(features, granularity_from_flag(granularity));

    intent::CvOptions options;
    options.folds = folds;
    options.balanced = balanced;
    options.seed = seed;
    options.jobs = jobs;

    std::vector<intent::EvalReport> reports;
    for (const std::string& name : algorithms) {
        reports.push_back(
            intent::cross_validate(algorithm_from_flag(name), {}, dataset, options));
    }
    intent::print_report_table(std::cout, reports);
    if (!out.empty()) write_text_file(out, intent::reports_to_json(reports));
    if (!csv_out.empty()) {
        std::string csv = intent::report_csv_header() + "\n";
        for (const intent::EvalReport& report : reports) {
            csv += intent::report_csv_row(report) + "\n";
        }
        write_text_file(csv_out, csv);
    }
    return 0;
}

int run_rank(const std::string& features, const std::string& discretizer, int jobs,
             const std::string& out) {
    intent::LabeledDataset dataset = load_dataset(features, intent::Granularity::Mission);
    auto parsed = intent::parse_discretizer(discretizer);
    if (!parsed) throw intent::UsageError("unknown discretizer '" + discretizer + "'");
    auto ranking = intent::rank_features(dataset, *parsed, jobs);

    std::string csv = "feature,information_gain\n";
    for (const intent::RankedFeature& feature : ranking) {
        char buffer[64];
        std::snprintf(buffer, sizeof(buffer), "%s,%.17g\n", feature.name.c_str(), feature.gain);
        csv += buffer;
    }
    emit_or_print(csv, out);
    return 0;
}

int run_compare(const std::string& dir, const std::string& algorithm, bool balanced,
                std::size_t folds, std::uint64_t seed, int jobs, bool lenient,
                const std::string& out) {
    intent::LogCorpus corpus = load_corpus_dir(dir, lenient);

    intent::CvOptions options;
    options.folds = folds;
    options.balanced = balanced;
    options.seed = seed;
    options.jobs = jobs;

    auto [mission_report, session_report] =
        intent::compare_granularity(corpus, algorithm_from_flag(algorithm), options);
    std::vector<intent::EvalReport> reports{mission_report, session_report};
    intent::print_report_table(std::cout, reports);
    if (!out.empty()) write_text_file(out, intent::reports_to_json(reports));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Search-mission intent classification toolkit"};
    app.require_subcommand(1);

    std::string input, out_dir = ".", out, csv_out, features, dir, config_path;
    std::string granularity = "mission", discretizer = "mdl", algorithm = "svm";
    std::vector<std::string> algorithms = {"dt", "rf", "lr", "svm"};
    bool balanced = false, lenient = false;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    int jobs = 1;

    auto* convert = app.add_subcommand("convert", "Convert a native query log to the TSV trio");
    convert->add_option("input", input, "Native log file or directory of log files")->required();
    convert->add_option("--out-dir", out_dir, "Directory for queries/clicks/labels TSVs")
        ->capture_default_str();
    convert->add_option("--config", config_path, "Flat key=value defaults file");

    auto* featurize = app.add_subcommand("featurize", "Compute the 22 features per unit");
    featurize->add_option("dir", dir, "Directory with queries.tsv (clicks/labels optional)")
        ->required();
    featurize->add_option("--granularity", granularity, "Unit granularity: mission or logical")
        ->check(CLI::IsMember({"mission", "logical", "logical_session"}))
        ->capture_default_str();
    featurize->add_flag("--lenient", lenient, "Downgrade mission invariant violations to warnings");
    featurize->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
    featurize->add_option("--out", out, "Feature CSV path (default: stdout)");
    featurize->add_option("--config", config_path, "Flat key=value defaults file");

    auto* experiment =
        app.add_subcommand("experiment", "Cross-validated evaluation of the classifiers");
    experiment->add_option("--features", features, "Feature CSV with labels")->required();
    experiment
        ->add_option("--algorithms", algorithms, "Comma-separated subset of dt,rf,lr,svm")
        ->delimiter(',')
        ->capture_default_str();
    experiment->add_flag("--balanced", balanced, "Undersample training folds to the minority class");
    experiment->add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
    experiment->add_option("--seed", seed, "Root random seed")->capture_default_str();
    experiment->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
    experiment
        ->add_option("--granularity", granularity, "Granularity tag echoed into reports")
        ->check(CLI::IsMember({"mission", "logical", "logical_session"}))
        ->capture_default_str();
    experiment->add_option("--out", out, "JSON report path");
    experiment->add_option("--csv", csv_out, "Summary CSV path");
    experiment->add_option("--config", config_path, "Flat key=value defaults file");

    auto* rank = app.add_subcommand("rank", "Rank features by information gain");
    rank->add_option("--features", features, "Feature CSV with labels")->required();
    rank->add_option("--discretizer", discretizer, "Feature binning: mdl or eqfreq")
        ->check(CLI::IsMember({"mdl", "eqfreq"}))
        ->capture_default_str();
    rank->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
    rank->add_option("--out", out, "Ranking CSV path (default: stdout)");
    rank->add_option("--config", config_path, "Flat key=value defaults file");

    auto* compare =
        app.add_subcommand("compare", "Mission-level vs logical-session-level evaluation");
    compare->add_option("dir", dir, "Directory with the TSV trio")->required();
    compare->add_option("--algorithm", algorithm, "One of dt,rf,lr,svm")->capture_default_str();
    compare->add_flag("--balanced", balanced, "Undersample training folds to the minority class");
    compare->add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
    compare->add_option("--seed", seed, "Root random seed")->capture_default_str();
    compare->add_option("--jobs", jobs, "Worker threads (0 = all cores)")->capture_default_str();
    compare->add_flag("--lenient", lenient, "Downgrade mission invariant violations to warnings");
    compare->add_option("--out", out, "JSON report path");
    compare->add_option("--config", config_path, "Flat key=value defaults file");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            for (CLI::App* sub : {convert, featurize, experiment, rank, compare}) {
                if (sub->parsed()) apply_config_file(*sub, config_path);
            }
        }
        if (convert->parsed()) return run_convert(input, out_dir);
        if (featurize->parsed()) return run_featurize(dir, granularity, lenient, jobs, out);
        if (experiment->parsed()) {
            return run_experiment(features, algorithms, balanced, folds, seed, jobs, granularity,
                                  out, csv_out);
        }
        if (rank->parsed()) return run_rank(features, discretizer, jobs, out);
        if (compare->parsed()) {
            return run_compare(dir, algorithm, balanced, folds, seed, jobs, lenient, out);
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const intent::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const intent::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
