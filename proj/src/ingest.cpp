#include "intent/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "intent/error.hpp"
#include "intent/text.hpp"
#include "intent/timestamp.hpp"

namespace intent {
namespace {

constexpr std::string_view kQueryHeader =
    "user_id\tquery\ttimestamp\tmission_id\tlogical_session_id\tphysical_session_id";
constexpr std::string_view kClickHeader =
    "user_id\tquery_timestamp\turl\tclick_timestamp\trank";
constexpr std::string_view kLabelHeader = "mission_id\tlabel";

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
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

EpochSeconds require_timestamp(std::string_view text, std::string_view source,
                               std::size_t lineno, std::string_view column) {
    auto parsed = try_parse_timestamp(text);
    if (!parsed) {
        throw ParseError(std::string(source), lineno,
                         "bad " + std::string(column) + " '" + std::string(text) +
                             "' (expected YYYY-MM-DD HH:MM:SS)");
    }
    return *parsed;
}

void require_columns(const std::vector<std::string_view>& fields, std::size_t want,
                     std::string_view source, std::size_t lineno) {
    if (fields.size() != want) {
        throw ParseError(std::string(source), lineno,
                         "expected " + std::to_string(want) + " tab-separated columns, got " +
                             std::to_string(fields.size()));
    }
}

void require_header(std::string_view line, std::string_view want, std::string_view source,
                    std::size_t lineno) {
    if (line != want) {
        throw ParseError(std::string(source), lineno,
                         "unexpected header; want '" + std::string(want) + "'");
    }
}

std::string at_line(std::string_view source, std::size_t lineno) {
    return std::string(source) + ":" + std::to_string(lineno) + ": ";
}

} // namespace

const Mission* LogCorpus::find_mission(std::string_view id) const {
    for (const Mission& m : missions) {
        if (m.id == id) return &m;
    }
    return nullptr;
}

CorpusStats compute_stats(const std::vector<Mission>& missions) {
    CorpusStats stats;
    std::set<std::string_view> users;
    for (const Mission& m : missions) {
        users.insert(m.user_id);
        stats.logical_sessions += m.sessions.size();
        stats.queries += m.query_count();
    }
    stats.users = users.size();
    stats.missions = missions.size();
    return stats;
}

std::vector<QueryEvent> parse_query_log(std::istream& in, std::string_view source) {
    std::vector<QueryEvent> queries;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    std::uint64_t seq = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            require_header(line, kQueryHeader, source, lineno);
            header_seen = true;
            continue;
        }
        auto fields = split_tabs(line);
        require_columns(fields, 6, source, lineno);
        QueryEvent ev;
        ev.user_id = std::string(fields[0]);
        ev.query_text = std::string(fields[1]);
        ev.timestamp = require_timestamp(fields[2], source, lineno, "timestamp");
        ev.mission_id = std::string(fields[3]);
        ev.logical_session_id = std::string(fields[4]);
        ev.physical_session_id = std::string(fields[5]);
        ev.seq = seq++;
        if (ev.user_id.empty()) throw ValidationError(at_line(source, lineno) + "empty user_id");
        if (trim(ev.query_text).empty()) {
            throw ValidationError(at_line(source, lineno) + "empty query text");
        }
        if (ev.mission_id.empty() || ev.logical_session_id.empty() ||
            ev.physical_session_id.empty()) {
            throw ValidationError(at_line(source, lineno) + "empty mission or session id");
        }
        queries.push_back(std::move(ev));
    }
    return queries;
}

std::size_t parse_click_log(std::istream& in, std::vector<QueryEvent>& queries,
                            std::string_view source) {
    // (user_id, query timestamp) → index of the earliest file-order query.
    std::map<std::pair<std::string_view, EpochSeconds>, std::size_t> by_key;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        auto key = std::make_pair(std::string_view(queries[i].user_id), queries[i].timestamp);
        auto [it, inserted] = by_key.try_emplace(key, i);
        if (!inserted && queries[i].seq < queries[it->second].seq) it->second = i;
    }

    std::string line;
    std::size_t lineno = 0;
    std::size_t attached = 0;
    bool header_seen = false;
    std::uint64_t seq = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            require_header(line, kClickHeader, source, lineno);
            header_seen = true;
            continue;
        }
        auto fields = split_tabs(line);
        require_columns(fields, 5, source, lineno);

        std::string user_id(fields[0]);
        EpochSeconds query_ts = require_timestamp(fields[1], source, lineno, "query_timestamp");

        ClickEvent click;
        click.url = std::string(fields[2]);
        if (click.url.empty()) throw ValidationError(at_line(source, lineno) + "empty url");
        click.domain = extract_domain(click.url);
        click.timestamp = require_timestamp(fields[3], source, lineno, "click_timestamp");
        if (fields[4].empty()) {
            click.rank = 1;
            click.rank_missing = true;
        } else {
            int rank = 0;
            const char* first = fields[4].data();
            const char* last = first + fields[4].size();
            auto [ptr, ec] = std::from_chars(first, last, rank);
            if (ec != std::errc() || ptr != last) {
                throw ParseError(std::string(source), lineno,
                                 "bad rank '" + std::string(fields[4]) + "'");
            }
            if (rank < 1) {
                throw ValidationError(at_line(source, lineno) + "rank " +
                                      std::to_string(rank) + " is below 1");
            }
            click.rank = rank;
        }
        click.seq = seq++;

        auto it = by_key.find(std::make_pair(std::string_view(user_id), query_ts));
        if (it == by_key.end()) {
            throw ValidationError(at_line(source, lineno) + "click references unknown query (" +
                                  user_id + ", " + format_timestamp(query_ts) + ")");
        }
        queries[it->second].clicks.push_back(std::move(click));
        ++attached;
    }
    return attached;
}

LabelMap parse_labels(std::istream& in, std::string_view source) {
    LabelMap labels;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        if (!header_seen) {
            require_header(line, kLabelHeader, source, lineno);
            header_seen = true;
            continue;
        }
        auto fields = split_tabs(line);
        require_columns(fields, 2, source, lineno);
        std::string mission_id(fields[0]);
        if (mission_id.empty()) throw ValidationError(at_line(source, lineno) + "empty mission_id");
        auto label = parse_intent_label(fields[1]);
        if (!label) {
            throw ParseError(std::string(source), lineno,
                             "unknown label '" + std::string(fields[1]) + "'");
        }
        auto [it, inserted] = labels.by_mission.try_emplace(mission_id, *label);
        if (!inserted) {
            if (it->second != *label) {
                throw ValidationError(at_line(source, lineno) + "conflicting labels for mission " +
                                      mission_id + ": " + std::string(to_string(it->second)) +
                                      " vs " + std::string(to_string(*label)));
            }
            continue; // duplicate agreeing line
        }
        if (*label == IntentLabel::Ambiguous) ++labels.ambiguous_count;
    }
    return labels;
}

LogCorpus assemble_corpus(std::vector<QueryEvent> queries, const LabelMap& labels) {
    struct MissionBuild {
        std::string user_id;
        std::map<std::string, std::vector<QueryEvent>> sessions;
    };
    std::map<std::string, MissionBuild> builds;
    for (QueryEvent& q : queries) {
        auto [it, inserted] = builds.try_emplace(q.mission_id);
        MissionBuild& build = it->second;
        if (inserted) {
            build.user_id = q.user_id;
        } else if (build.user_id != q.user_id) {
            throw ValidationError("mission " + q.mission_id + " spans users '" + build.user_id +
                                  "' and '" + q.user_id + "'");
        }
        build.sessions[q.logical_session_id].push_back(std::move(q));
    }

    std::map<std::string, std::string> session_owner;
    LogCorpus corpus;
    corpus.missions.reserve(builds.size());
    for (auto& [mission_id, build] : builds) {
        Mission mission;
        mission.id = mission_id;
        mission.user_id = build.user_id;
        for (auto& [session_id, session_queries] : build.sessions) {
            auto [it, inserted] = session_owner.try_emplace(session_id, mission_id);
            if (!inserted) {
                throw ValidationError("logical session " + session_id + " appears in missions " +
                                      it->second + " and " + mission_id);
            }
            std::sort(session_queries.begin(), session_queries.end(),
                      [](const QueryEvent& a, const QueryEvent& b) {
                          return std::make_pair(a.timestamp, a.seq) <
                                 std::make_pair(b.timestamp, b.seq);
                      });
            for (QueryEvent& q : session_queries) {
                std::sort(q.clicks.begin(), q.clicks.end(),
                          [](const ClickEvent& a, const ClickEvent& b) {
                              return std::make_pair(a.timestamp, a.seq) <
                                     std::make_pair(b.timestamp, b.seq);
                          });
            }
            mission.sessions.push_back(LogicalSession{session_id, std::move(session_queries)});
        }
        std::sort(mission.sessions.begin(), mission.sessions.end(),
                  [](const LogicalSession& a, const LogicalSession& b) {
                      return std::make_pair(a.start_time(), std::string_view(a.id)) <
                             std::make_pair(b.start_time(), std::string_view(b.id));
                  });
        auto label = labels.by_mission.find(mission_id);
        if (label != labels.by_mission.end()) mission.label = label->second;
        corpus.missions.push_back(std::move(mission));
    }

    std::sort(corpus.missions.begin(), corpus.missions.end(),
              [](const Mission& a, const Mission& b) {
                  return std::make_pair(a.sessions.front().start_time(), std::string_view(a.id)) <
                         std::make_pair(b.sessions.front().start_time(), std::string_view(b.id));
              });
    corpus.stats = compute_stats(corpus.missions);
    return corpus;
}

void write_query_log(std::ostream& out, const LogCorpus& corpus) {
    out << kQueryHeader << '\n';
    for (const Mission& mission : corpus.missions) {
        for (const LogicalSession& session : mission.sessions) {
            for (const QueryEvent& q : session.queries) {
                out << q.user_id << '\t' << q.query_text << '\t'
                    << format_timestamp(q.timestamp) << '\t' << q.mission_id << '\t'
                    << q.logical_session_id << '\t' << q.physical_session_id << '\n';
            }
        }
    }
}

void write_click_log(std::ostream& out, const LogCorpus& corpus) {
    out << kClickHeader << '\n';
    for (const Mission& mission : corpus.missions) {
        for (const LogicalSession& session : mission.sessions) {
            for (const QueryEvent& q : session.queries) {
                for (const ClickEvent& c : q.clicks) {
                    out << q.user_id << '\t' << format_timestamp(q.timestamp) << '\t' << c.url
                        << '\t' << format_timestamp(c.timestamp) << '\t';
                    if (!c.rank_missing) out << c.rank;
                    out << '\n';
                }
            }
        }
    }
}

void write_labels(std::ostream& out, const LogCorpus& corpus) {
    out << kLabelHeader << '\n';
    for (const Mission& mission : corpus.missions) {
        if (mission.label) out << mission.id << '\t' << to_string(*mission.label) << '\n';
    }
}

} // namespace intent
