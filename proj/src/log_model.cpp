#include "intent/log_model.hpp"

#include <algorithm>

#include "intent/text.hpp"

namespace intent {

std::string_view to_string(IntentLabel label) {
    switch (label) {
    case IntentLabel::Informational: return "informational";
    case IntentLabel::Navigational: return "navigational";
    case IntentLabel::Transactional: return "transactional";
    case IntentLabel::Ambiguous: return "ambiguous";
    }
    return "unknown";
}

std::optional<IntentLabel> parse_intent_label(std::string_view text) {
    std::string lowered = to_lower(trim(text));
    if (lowered == "informational") return IntentLabel::Informational;
    if (lowered == "navigational") return IntentLabel::Navigational;
    if (lowered == "transactional") return IntentLabel::Transactional;
    if (lowered == "ambiguous") return IntentLabel::Ambiguous;
    return std::nullopt;
}

int class_index(IntentLabel label) {
    for (std::size_t i = 0; i < kTrainingClasses.size(); ++i) {
        if (kTrainingClasses[i] == label) return static_cast<int>(i);
    }
    return -1;
}

EpochSeconds LogicalSession::start_time() const {
    EpochSeconds t = queries.empty() ? 0 : queries.front().timestamp;
    for (const QueryEvent& q : queries) {
        t = std::min(t, q.timestamp);
        for (const ClickEvent& c : q.clicks) t = std::min(t, c.timestamp);
    }
    return t;
}

EpochSeconds LogicalSession::end_time() const {
    EpochSeconds t = queries.empty() ? 0 : queries.front().timestamp;
    for (const QueryEvent& q : queries) {
        t = std::max(t, q.timestamp);
        for (const ClickEvent& c : q.clicks) t = std::max(t, c.timestamp);
    }
    return t;
}

std::size_t Mission::query_count() const {
    std::size_t n = 0;
    for (const LogicalSession& s : sessions) n += s.queries.size();
    return n;
}

std::size_t Mission::click_count() const {
    std::size_t n = 0;
    for (const LogicalSession& s : sessions) {
        for (const QueryEvent& q : s.queries) n += q.clicks.size();
    }
    return n;
}

std::vector<const QueryEvent*> Mission::chronological_queries() const {
    std::vector<const QueryEvent*> queries;
    queries.reserve(query_count());
    for (const LogicalSession& s : sessions) {
        for (const QueryEvent& q : s.queries) queries.push_back(&q);
    }
    std::sort(queries.begin(), queries.end(), [](const QueryEvent* a, const QueryEvent* b) {
        if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
        return a->seq < b->seq;
    });
    return queries;
}

std::vector<EventRef> flattened_events(const Mission& mission) {
    std::vector<EventRef> events;
    for (const LogicalSession& s : mission.sessions) {
        for (const QueryEvent& q : s.queries) {
            events.push_back({q.timestamp, false, &q, nullptr});
            for (const ClickEvent& c : q.clicks) {
                events.push_back({c.timestamp, true, &q, &c});
            }
        }
    }
    std::sort(events.begin(), events.end(), [](const EventRef& a, const EventRef& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        if (a.is_click != b.is_click) return !a.is_click;
        std::uint64_t sa = a.is_click ? a.click->seq : a.query->seq;
        std::uint64_t sb = b.is_click ? b.click->seq : b.query->seq;
        return sa < sb;
    });
    return events;
}

std::vector<std::string> validate_mission(const Mission& mission) {
    std::vector<std::string> violations;
    auto report = [&](std::string text) { violations.push_back(std::move(text)); };

    if (mission.sessions.empty()) {
        report("mission " + mission.id + ": no logical sessions");
        return violations;
    }
    for (const LogicalSession& session : mission.sessions) {
        if (session.queries.empty()) {
            report("mission " + mission.id + ": logical session " + session.id +
                   " has no queries");
            continue;
        }
        const QueryEvent* previous = nullptr;
        for (const QueryEvent& q : session.queries) {
            if (trim(q.query_text).empty()) {
                report("mission " + mission.id + ": empty query text at " +
                       format_timestamp(q.timestamp));
            }
            if (q.user_id != mission.user_id) {
                report("mission " + mission.id + ": query \"" + q.query_text + "\" has user " +
                       q.user_id + ", mission has " + mission.user_id);
            }
            if (q.mission_id != mission.id) {
                report("mission " + mission.id + ": query \"" + q.query_text +
                       "\" carries mission id " + q.mission_id);
            }
            if (q.logical_session_id != session.id) {
                report("mission " + mission.id + ": query \"" + q.query_text +
                       "\" carries session id " + q.logical_session_id + " inside session " +
                       session.id);
            }
            if (previous && (q.timestamp < previous->timestamp ||
                             (q.timestamp == previous->timestamp && q.seq < previous->seq))) {
                report("mission " + mission.id + ": session " + session.id +
                       " queries out of chronological order at " +
                       format_timestamp(q.timestamp));
            }
            for (const ClickEvent& c : q.clicks) {
                if (c.timestamp < q.timestamp) {
                    report("mission " + mission.id + ": click on " + c.url +
                           " precedes its query \"" + q.query_text + "\" (" +
                           format_timestamp(c.timestamp) + " < " +
                           format_timestamp(q.timestamp) + ")");
                }
                if (c.rank < 1) {
                    report("mission " + mission.id + ": click on " + c.url + " has rank " +
                           std::to_string(c.rank));
                }
                if (c.domain != extract_domain(c.url)) {
                    report("mission " + mission.id + ": click domain \"" + c.domain +
                           "\" does not match url " + c.url);
                }
            }
            previous = &q;
        }
    }
    return violations;
}

} // namespace intent
