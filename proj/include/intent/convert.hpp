#ifndef INTENT_CONVERT_HPP
#define INTENT_CONVERT_HPP

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "intent/ingest.hpp"

namespace intent {

// Adapter for per-user annotated query logs in the AOL-derived layout:
// one tab-separated row per query or click with user, query text,
// timestamp, optional click rank/URL, and per-user mission/session
// numbers. Header names are matched case-insensitively with common
// aliases (AnonID/UserID, QueryTime/Time, ItemRank/Rank, ClickURL/URL,
// MissionID/Mission, SessionID/Session, optional Label/Intent).
//
// Conversion rules: `-` or empty click fields mean "no click";
// consecutive rows identical up to the click fields collapse into one
// query event with several clicks; click timestamps reuse the query
// timestamp (the layout has none of its own); global ids are
// synthesized per user ("u<user>-m<n>"); physical sessions are derived
// per user from inactivity gaps over 30 minutes.
class NativeLogBuilder {
public:
    // Parses one input file; may be called once per file of a corpus.
    void consume(std::istream& in, std::string_view source);

    // Derives physical sessions and assembles the corpus.
    LogCorpus finish();

    std::size_t lines_consumed() const { return lines_; }

private:
    std::vector<QueryEvent> queries_;
    LabelMap labels_;
    std::size_t lines_ = 0;
    std::uint64_t query_seq_ = 0;
    std::uint64_t click_seq_ = 0;
};

} // namespace intent

#endif
