#ifndef INTENT_LOG_MODEL_HPP
#define INTENT_LOG_MODEL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intent/timestamp.hpp"

namespace intent {

// Broder's three search-intent classes. Ambiguous exists only as a
// label-file value; it is never a training or prediction target.
enum class IntentLabel {
    Informational,
    Navigational,
    Transactional,
    Ambiguous,
};

// Fixed class order used everywhere a tie has to break.
inline constexpr std::array<IntentLabel, 3> kTrainingClasses = {
    IntentLabel::Informational,
    IntentLabel::Navigational,
    IntentLabel::Transactional,
};

std::string_view to_string(IntentLabel label);
std::optional<IntentLabel> parse_intent_label(std::string_view text);

// Index of a label within kTrainingClasses; -1 for Ambiguous.
int class_index(IntentLabel label);

// One SERP result click. `seq` preserves click-log file order for
// timestamp tie-breaking.
struct ClickEvent {
    std::string url;
    std::string domain; // lowercased host, leading www. removed
    EpochSeconds timestamp = 0;
    int rank = 1;
    bool rank_missing = false; // log omitted the rank; recorded as 1 and flagged
    std::uint64_t seq = 0;

    bool operator==(const ClickEvent&) const = default;
};

// One logged query with its clicks. `seq` preserves query-log file order.
struct QueryEvent {
    std::string user_id;
    std::string query_text;
    EpochSeconds timestamp = 0;
    std::string mission_id;
    std::string logical_session_id;
    std::string physical_session_id;
    std::vector<ClickEvent> clicks;
    std::uint64_t seq = 0;

    bool operator==(const QueryEvent&) const = default;
};

// Consecutive queries toward one information need. Queries are kept in
// chronological order (ties by file order).
struct LogicalSession {
    std::string id;
    std::vector<QueryEvent> queries;

    // Span bounds over queries and their clicks.
    EpochSeconds start_time() const;
    EpochSeconds end_time() const;

    bool operator==(const LogicalSession&) const = default;
};

// A group of logical sessions sharing one information need, possibly
// spread across physical sessions. The unit of classification.
struct Mission {
    std::string id;
    std::string user_id;
    std::vector<LogicalSession> sessions; // ordered by start time
    std::optional<IntentLabel> label;

    std::size_t query_count() const;
    std::size_t click_count() const;

    // All queries of the mission in one chronological sequence.
    std::vector<const QueryEvent*> chronological_queries() const;

    bool operator==(const Mission&) const = default;
};

// A query or click in the mission's flattened timeline.
struct EventRef {
    EpochSeconds timestamp = 0;
    bool is_click = false;
    const QueryEvent* query = nullptr; // parent query for clicks
    const ClickEvent* click = nullptr; // null for query events
};

// Flattened timeline sorted by (timestamp, queries-before-clicks, file
// order). Total and stable for a fixed input.
std::vector<EventRef> flattened_events(const Mission& mission);

// Checks every type invariant; returns one human-readable line per
// violation (empty means valid). Violations are data, not errors.
std::vector<std::string> validate_mission(const Mission& mission);

} // namespace intent

#endif
