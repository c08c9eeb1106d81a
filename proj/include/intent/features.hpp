#ifndef INTENT_FEATURES_HPP
#define INTENT_FEATURES_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intent/ingest.hpp"
#include "intent/log_model.hpp"

namespace intent {

inline constexpr std::size_t kFeatureCount = 22;

// Column order of every feature matrix and ranking in this library.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "q_min",
    "q_max",
    "q_avg",
    "q_unique",
    "q_cos3",
    "q_cos4",
    "q_lehv",
    "m_queries",
    "m_logical",
    "m_duration_incl_break",
    "m_duration_excl_break",
    "m_avg_incl_break",
    "m_avg_excl_break",
    "b_click",
    "b_unique",
    "b_revisit",
    "b_revisitunique",
    "b_clickrate",
    "b_cos3",
    "b_cos4",
    "b_avg_serps",
    "b_serps",
};

// Query-shape block: term counts plus similarity of consecutive queries.
struct QueryFeatures {
    double q_min = 0;
    double q_max = 0;
    double q_avg = 0;
    double q_unique = 0;
    double q_cos3 = 1.0;
    double q_cos4 = 1.0;
    double q_lehv = 0;

    bool operator==(const QueryFeatures&) const = default;
};

// Mission-shape block: counts and durations in seconds.
struct MissionFeatures {
    double m_queries = 0;
    double m_logical = 0;
    double m_duration_incl_break = 0;
    double m_duration_excl_break = 0;
    double m_avg_incl_break = 0;
    double m_avg_excl_break = 0;

    bool operator==(const MissionFeatures&) const = default;
};

// Click-behavior block. Domain revisits and query/domain similarity.
struct BrowsingFeatures {
    double b_click = 0;
    double b_unique = 0;
    double b_revisit = 0;
    double b_revisitunique = 0;
    double b_clickrate = 0;
    double b_cos3 = 0;
    double b_cos4 = 0;
    double b_avg_serps = 0;
    double b_serps = 0;

    bool operator==(const BrowsingFeatures&) const = default;
};

struct FeatureVector {
    QueryFeatures q;
    MissionFeatures m;
    BrowsingFeatures b;

    std::array<double, kFeatureCount> to_array() const;
    static FeatureVector from_array(const std::array<double, kFeatureCount>& values);

    bool operator==(const FeatureVector&) const = default;
};

// Returns one line per violated FeatureVector invariant (empty = valid).
std::vector<std::string> check_feature_invariants(const FeatureVector& fv);

// Classification unit: a whole mission or a single logical session.
enum class Granularity { Mission, LogicalSession };

std::string_view to_string(Granularity granularity);
std::optional<Granularity> parse_granularity(std::string_view text);

// A view of the sessions that form one classification unit. The label is
// inherited from the owning mission.
struct FeatureUnit {
    std::string id;
    std::optional<IntentLabel> label;
    std::vector<const LogicalSession*> sessions;
};

// One unit per mission, or one per logical session. Unit ids stay unique
// because session ids are unique corpus-wide.
std::vector<FeatureUnit> make_units(const LogCorpus& corpus, Granularity granularity);

QueryFeatures extract_query_features(const FeatureUnit& unit);
MissionFeatures extract_mission_features(const FeatureUnit& unit);
BrowsingFeatures extract_browsing_features(const FeatureUnit& unit);
FeatureVector extract_all(const FeatureUnit& unit);

QueryFeatures extract_query_features(const Mission& mission);
MissionFeatures extract_mission_features(const Mission& mission);
BrowsingFeatures extract_browsing_features(const Mission& mission);
FeatureVector extract_all(const Mission& mission);
FeatureVector extract_all(const LogicalSession& session);

struct FeatureRow {
    std::string unit_id;
    std::optional<IntentLabel> label;
    FeatureVector features;

    bool operator==(const FeatureRow&) const = default;
};

// Featurizes every unit; rows follow make_units order regardless of
// thread count. jobs ≤ 0 means all available cores.
std::vector<FeatureRow> featurize_corpus(const LogCorpus& corpus, Granularity granularity,
                                         int jobs = 1);

// Single-threaded reference twin of featurize_corpus.
std::vector<FeatureRow> featurize_corpus_serial(const LogCorpus& corpus,
                                                Granularity granularity);

// CSV with header `unit_id,label,q_min,...,b_serps`; doubles written as
// shortest round-trip decimals; empty label column = unlabeled.
void write_feature_csv(std::ostream& out, const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> read_feature_csv(std::istream& in,
                                         std::string_view source = "features.csv");

} // namespace intent

#endif
