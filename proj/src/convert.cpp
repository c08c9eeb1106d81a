#include "intent/convert.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "intent/error.hpp"
#include "intent/text.hpp"
#include "intent/timestamp.hpp"

namespace intent {
namespace {

constexpr EpochSeconds kPhysicalGap = 30 * 60;

enum Column : std::size_t {
    kUser = 0,
    kQuery,
    kTime,
    kRank,
    kUrl,
    kMission,
    kSession,
    kLabel,
    kColumnCount,
};

std::string normalize_name(std::string_view name) {
    std::string out;
    for (char ch : name) {
        if (ch >= 'A' && ch <= 'Z') {
            out += static_cast<char>(ch - 'A' + 'a');
        } else if ((ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9')) {
            out += ch;
        }
    }
    return out;
}

std::optional<Column> column_role(std::string_view header_field) {
    std::string name = normalize_name(header_field);
    if (name == "userid" || name == "anonid" || name == "user") return kUser;
    if (name == "query") return kQuery;
    if (name == "querytime" || name == "time" || name == "timestamp") return kTime;
    if (name == "itemrank" || name == "rank") return kRank;
    if (name == "clickurl" || name == "url") return kUrl;
    if (name == "missionid" || name == "mission") return kMission;
    if (name == "sessionid" || name == "session" || name == "logicalsessionid") return kSession;
    if (name == "label" || name == "intent") return kLabel;
    return std::nullopt;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

bool is_absent(std::string_view field) {
    return field.empty() || field == "-";
}

} // namespace

void NativeLogBuilder::consume(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t lineno = 0;
    std::array<std::size_t, kColumnCount> columns;
    columns.fill(static_cast<std::size_t>(-1));
    bool header_seen = false;
    std::size_t field_count = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_tabs(line);

        if (!header_seen) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                auto role = column_role(fields[i]);
                if (role) columns[*role] = i;
            }
            for (Column required : {kUser, kQuery, kTime, kMission, kSession}) {
                if (columns[required] == static_cast<std::size_t>(-1)) {
                    throw ParseError(std::string(source), lineno,
                                     "header is missing a user/query/time/mission/session column");
                }
            }
            field_count = fields.size();
            header_seen = true;
            continue;
        }
        ++lines_;
        if (fields.size() != field_count) {
            throw ParseError(std::string(source), lineno,
                             "expected " + std::to_string(field_count) + " columns, got " +
                                 std::to_string(fields.size()));
        }
        auto field = [&](Column role) -> std::string_view {
            std::size_t i = columns[role];
            return i == static_cast<std::size_t>(-1) ? std::string_view{} : fields[i];
        };

        std::string user(trim(field(kUser)));
        std::string query(trim(field(kQuery)));
        std::string_view time_text = trim(field(kTime));
        std::string mission(trim(field(kMission)));
        std::string session(trim(field(kSession)));
        if (user.empty() || mission.empty() || session.empty()) {
            throw ValidationError(std::string(source) + ":" + std::to_string(lineno) +
                                  ": empty user, mission, or session field");
        }
        if (query.empty()) {
            throw ValidationError(std::string(source) + ":" + std::to_string(lineno) +
                                  ": empty query text");
        }
        auto timestamp = try_parse_timestamp(time_text);
        if (!timestamp) {
            throw ParseError(std::string(source), lineno,
                             "bad timestamp '" + std::string(time_text) + "'");
        }

        bool continues_previous =
            !queries_.empty() && queries_.back().user_id == user &&
            queries_.back().query_text == query && queries_.back().timestamp == *timestamp &&
            queries_.back().mission_id == "u" + user + "-m" + mission &&
            queries_.back().logical_session_id == "u" + user + "-s" + session;
        if (!continues_previous) {
            QueryEvent ev;
            ev.user_id = user;
            ev.query_text = query;
            ev.timestamp = *timestamp;
            ev.mission_id = "u" + user + "-m" + mission;
            ev.logical_session_id = "u" + user + "-s" + session;
            // Physical sessions are derived in finish().
            ev.seq = query_seq_++;
            queries_.push_back(std::move(ev));
        }

        std::string_view url = field(kUrl);
        if (!is_absent(url)) {
            ClickEvent click;
            click.url = std::string(url);
            click.domain = extract_domain(click.url);
            click.timestamp = *timestamp;
            std::string_view rank_text = trim(field(kRank));
            if (is_absent(rank_text)) {
                click.rank = 1;
                click.rank_missing = true;
            } else {
                int rank = 0;
                const char* first = rank_text.data();
                const char* last = first + rank_text.size();
                auto [ptr, ec] = std::from_chars(first, last, rank);
                if (ec != std::errc() || ptr != last) {
                    throw ParseError(std::string(source), lineno,
                                     "bad rank '" + std::string(rank_text) + "'");
                }
                if (rank < 1) {
                    throw ValidationError(std::string(source) + ":" + std::to_string(lineno) +
                                          ": rank " + std::to_string(rank) + " is below 1");
                }
                click.rank = rank;
            }
            click.seq = click_seq_++;
            queries_.back().clicks.push_back(std::move(click));
        }

        std::string_view label_text = trim(field(kLabel));
        if (!is_absent(label_text)) {
            auto label = parse_intent_label(label_text);
            if (!label) {
                throw ParseError(std::string(source), lineno,
                                 "unknown label '" + std::string(label_text) + "'");
            }
            std::string mission_id = queries_.back().mission_id;
            auto [it, inserted] = labels_.by_mission.try_emplace(mission_id, *label);
            if (!inserted && it->second != *label) {
                throw ValidationError("conflicting labels for mission " + mission_id);
            }
            if (inserted && *label == IntentLabel::Ambiguous) ++labels_.ambiguous_count;
        }
    }
}

LogCorpus NativeLogBuilder::finish() {
    // Per-user chronological scan; a gap over 30 minutes starts a new
    // physical session.
    std::map<std::string, std::vector<QueryEvent*>> by_user;
    for (QueryEvent& q : queries_) by_user[q.user_id].push_back(&q);
    for (auto& [user, events] : by_user) {
        std::sort(events.begin(), events.end(), [](const QueryEvent* a, const QueryEvent* b) {
            return std::make_pair(a->timestamp, a->seq) < std::make_pair(b->timestamp, b->seq);
        });
        std::size_t physical = 0;
        EpochSeconds previous = 0;
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (i == 0 || events[i]->timestamp - previous > kPhysicalGap) ++physical;
            events[i]->physical_session_id = "u" + user + "-p" + std::to_string(physical);
            previous = events[i]->timestamp;
        }
    }
    return assemble_corpus(std::move(queries_), labels_);
}

} // namespace intent
