#include "intent/report.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace intent {
namespace {

using ordered_json = nlohmann::ordered_json;

// Display order of the summary table and CSV (class indices within
// kTrainingClasses).
constexpr std::array<std::size_t, 3> kDisplayOrder = {1, 0, 2};

ordered_json class_metrics_json(const ClassMetrics& m) {
    return ordered_json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

ordered_json report_json(const EvalReport& report) {
    ordered_json j;
    j["algorithm"] = report.algorithm;
    j["balanced"] = report.balanced;
    j["granularity"] = report.granularity;
    j["seed"] = report.seed;
    j["folds"] = report.folds;

    ordered_json confusion;
    ordered_json classes = ordered_json::array();
    for (IntentLabel label : kTrainingClasses) classes.push_back(std::string(to_string(label)));
    confusion["classes"] = classes;
    ordered_json rows = ordered_json::array();
    for (const auto& row : report.confusion.counts) {
        rows.push_back(ordered_json{row[0], row[1], row[2]});
    }
    confusion["rows"] = rows;
    j["confusion"] = confusion;

    ordered_json per_class;
    for (std::size_t k = 0; k < 3; ++k) {
        per_class[std::string(to_string(kTrainingClasses[k]))] =
            class_metrics_json(report.summary.per_class[k]);
    }
    ordered_json metrics;
    metrics["per_class"] = per_class;
    metrics["weighted"] = class_metrics_json(report.summary.weighted);
    metrics["accuracy"] = report.summary.accuracy;
    j["metrics"] = metrics;

    if (!report.information_gain.empty()) {
        ordered_json ranking = ordered_json::array();
        for (const auto& [feature, gain] : report.information_gain) {
            ranking.push_back(ordered_json{{"feature", feature}, {"gain", gain}});
        }
        j["information_gain"] = ranking;
    }
    return j;
}

std::string format_number(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

} // namespace

std::string report_to_json(const EvalReport& report) {
    return report_json(report).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<EvalReport>& reports) {
    ordered_json j;
    ordered_json list = ordered_json::array();
    for (const EvalReport& report : reports) list.push_back(report_json(report));
    j["reports"] = list;
    return j.dump(2) + "\n";
}

std::string report_csv_header() {
    std::string header = "algorithm,balanced,granularity,seed,folds";
    for (std::size_t k : kDisplayOrder) {
        std::string cls(to_string(kTrainingClasses[k]));
        header += "," + cls + "_precision," + cls + "_recall," + cls + "_f1";
    }
    header += ",weighted_precision,weighted_recall,weighted_f1,accuracy";
    return header;
}

std::string report_csv_row(const EvalReport& report) {
    std::string row = report.algorithm;
    row += report.balanced ? ",true" : ",false";
    row += "," + report.granularity;
    row += "," + std::to_string(report.seed);
    row += "," + std::to_string(report.folds);
    for (std::size_t k : kDisplayOrder) {
        const ClassMetrics& m = report.summary.per_class[k];
        row += "," + format_number(m.precision);
        row += "," + format_number(m.recall);
        row += "," + format_number(m.f1);
    }
    row += "," + format_number(report.summary.weighted.precision);
    row += "," + format_number(report.summary.weighted.recall);
    row += "," + format_number(report.summary.weighted.f1);
    row += "," + format_number(report.summary.accuracy);
    return row;
}

void print_report_table(std::ostream& out, const std::vector<EvalReport>& reports) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-9s %-8s %-15s %5s  %5s %5s %5s  %5s %5s %5s  %5s %5s %5s  %5s %5s %5s  %5s",
                  "algo", "balance", "granularity", "folds", "N.P", "N.R", "N.F1", "I.P", "I.R",
                  "I.F1", "T.P", "T.R", "T.F1", "W.P", "W.R", "W.F1", "Accu");
    out << line << '\n';
    for (const EvalReport& report : reports) {
        const MetricsSummary& s = report.summary;
        std::snprintf(
            line, sizeof(line),
            "%-9s %-8s %-15s %5zu  %.3f %.3f %.3f  %.3f %.3f %.3f  %.3f %.3f %.3f  %.3f %.3f %.3f  %.3f",
            report.algorithm.c_str(), report.balanced ? "yes" : "no", report.granularity.c_str(),
            report.folds, s.per_class[1].precision, s.per_class[1].recall, s.per_class[1].f1,
            s.per_class[0].precision, s.per_class[0].recall, s.per_class[0].f1,
            s.per_class[2].precision, s.per_class[2].recall, s.per_class[2].f1,
            s.weighted.precision, s.weighted.recall, s.weighted.f1, s.accuracy);
        out << line << '\n';
    }
}

} // namespace intent
