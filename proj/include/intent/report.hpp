#ifndef INTENT_REPORT_HPP
#define INTENT_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "intent/metrics.hpp"

namespace intent {

// One cross-validation result: configuration echo, pooled confusion
// matrix, derived metrics, and an optional feature-ranking table.
struct EvalReport {
    std::string algorithm;   // short token, e.g. "svm"
    bool balanced = false;
    std::string granularity; // "mission" or "logical_session"
    std::uint64_t seed = 0;
    std::size_t folds = 0;
    ConfusionMatrix confusion;
    MetricsSummary summary;
    std::vector<std::pair<std::string, double>> information_gain; // empty = omitted

    bool operator==(const EvalReport&) const = default;
};

// JSON with a fixed key order, so equal reports serialize to equal bytes.
std::string report_to_json(const EvalReport& report);
std::string reports_to_json(const std::vector<EvalReport>& reports);

// Flat CSV mirroring the summary table: per-class P/R/F1 in display
// order (navigational, informational, transactional), weighted P/R/F1,
// accuracy.
std::string report_csv_header();
std::string report_csv_row(const EvalReport& report);

// Human-readable fixed-width summary table of several reports.
void print_report_table(std::ostream& out, const std::vector<EvalReport>& reports);

} // namespace intent

#endif
