#ifndef INTENT_INGEST_HPP
#define INTENT_INGEST_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "intent/log_model.hpp"

namespace intent {

struct CorpusStats {
    std::size_t queries = 0;
    std::size_t users = 0;
    std::size_t logical_sessions = 0;
    std::size_t missions = 0;

    bool operator==(const CorpusStats&) const = default;
};

// A parsed log: missions in chronological order plus corpus-level counts.
struct LogCorpus {
    std::vector<Mission> missions;
    CorpusStats stats;

    const Mission* find_mission(std::string_view id) const;
};

CorpusStats compute_stats(const std::vector<Mission>& missions);

// Mission labels as read from a labels file. Ambiguous entries are kept
// here but excluded from any training dataset built later.
struct LabelMap {
    std::map<std::string, IntentLabel> by_mission;
    std::size_t ambiguous_count = 0;
};

// Query log TSV: header `user_id\tquery\ttimestamp\tmission_id\t
// logical_session_id\tphysical_session_id`, timestamps
// `YYYY-MM-DD HH:MM:SS`. Readers accept \r\n.
std::vector<QueryEvent> parse_query_log(std::istream& in,
                                        std::string_view source = "queries.tsv");

// Click log TSV: header `user_id\tquery_timestamp\turl\tclick_timestamp\trank`.
// Clicks attach to the query with matching (user_id, timestamp); when
// several queries share that key the earliest file-order one wins.
// Returns the number of clicks attached. An empty rank is recorded as 1
// and flagged.
std::size_t parse_click_log(std::istream& in, std::vector<QueryEvent>& queries,
                            std::string_view source = "clicks.tsv");

// Labels TSV: header `mission_id\tlabel`, label case-insensitive in
// {informational, navigational, transactional, ambiguous}.
LabelMap parse_labels(std::istream& in, std::string_view source = "labels.tsv");

// Groups queries into missions and logical sessions, sorts everything
// chronologically (file order breaks ties), attaches labels, recomputes
// stats. Permutation-invariant over input line order up to the seq
// tie-break.
LogCorpus assemble_corpus(std::vector<QueryEvent> queries, const LabelMap& labels = {});

// Writers emitting the exact schemas above with \n line endings.
void write_query_log(std::ostream& out, const LogCorpus& corpus);
void write_click_log(std::ostream& out, const LogCorpus& corpus);
void write_labels(std::ostream& out, const LogCorpus& corpus);

} // namespace intent

#endif
