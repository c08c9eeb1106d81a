#include "intent/features.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include <omp.h>

#include "intent/error.hpp"
#include "intent/similarity.hpp"
#include "intent/text.hpp"

namespace intent {
namespace {

constexpr double kTolerance = 1e-9;

// Chronological query order across the unit's sessions, ties by file order.
std::vector<const QueryEvent*> unit_queries(const FeatureUnit& unit) {
    std::vector<const QueryEvent*> queries;
    for (const LogicalSession* session : unit.sessions) {
        for (const QueryEvent& q : session->queries) queries.push_back(&q);
    }
    std::sort(queries.begin(), queries.end(), [](const QueryEvent* a, const QueryEvent* b) {
        return std::make_pair(a->timestamp, a->seq) < std::make_pair(b->timestamp, b->seq);
    });
    return queries;
}

FeatureUnit whole_mission_unit(const Mission& mission) {
    FeatureUnit unit;
    unit.id = mission.id;
    unit.label = mission.label;
    unit.sessions.reserve(mission.sessions.size());
    for (const LogicalSession& s : mission.sessions) unit.sessions.push_back(&s);
    return unit;
}

void append_double(std::string& out, double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out.append(buffer, ptr);
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string csv_header() {
    std::string header = "unit_id,label";
    for (std::string_view name : kFeatureNames) {
        header += ',';
        header += name;
    }
    return header;
}

} // namespace

std::array<double, kFeatureCount> FeatureVector::to_array() const {
    return {q.q_min,
            q.q_max,
            q.q_avg,
            q.q_unique,
            q.q_cos3,
            q.q_cos4,
            q.q_lehv,
            m.m_queries,
            m.m_logical,
            m.m_duration_incl_break,
            m.m_duration_excl_break,
            m.m_avg_incl_break,
            m.m_avg_excl_break,
            b.b_click,
            b.b_unique,
            b.b_revisit,
            b.b_revisitunique,
            b.b_clickrate,
            b.b_cos3,
            b.b_cos4,
            b.b_avg_serps,
            b.b_serps};
}

FeatureVector FeatureVector::from_array(const std::array<double, kFeatureCount>& v) {
    FeatureVector fv;
    fv.q.q_min = v[0];
    fv.q.q_max = v[1];
    fv.q.q_avg = v[2];
    fv.q.q_unique = v[3];
    fv.q.q_cos3 = v[4];
    fv.q.q_cos4 = v[5];
    fv.q.q_lehv = v[6];
    fv.m.m_queries = v[7];
    fv.m.m_logical = v[8];
    fv.m.m_duration_incl_break = v[9];
    fv.m.m_duration_excl_break = v[10];
    fv.m.m_avg_incl_break = v[11];
    fv.m.m_avg_excl_break = v[12];
    fv.b.b_click = v[13];
    fv.b.b_unique = v[14];
    fv.b.b_revisit = v[15];
    fv.b.b_revisitunique = v[16];
    fv.b.b_clickrate = v[17];
    fv.b.b_cos3 = v[18];
    fv.b.b_cos4 = v[19];
    fv.b.b_avg_serps = v[20];
    fv.b.b_serps = v[21];
    return fv;
}

std::vector<std::string> check_feature_invariants(const FeatureVector& fv) {
    std::vector<std::string> violations;
    auto flag = [&](const std::string& what) { violations.push_back(what); };

    for (double value : fv.to_array()) {
        if (!std::isfinite(value)) {
            flag("non-finite feature value");
            return violations;
        }
    }
    if (fv.q.q_min > fv.q.q_avg + kTolerance || fv.q.q_avg > fv.q.q_max + kTolerance) {
        flag("q_min <= q_avg <= q_max violated");
    }
    for (double unit_bounded : {fv.q.q_cos3, fv.q.q_cos4, fv.b.b_cos3, fv.b.b_cos4,
                                fv.b.b_clickrate}) {
        if (unit_bounded < 0.0 || unit_bounded > 1.0) {
            flag("similarity or rate outside [0, 1]");
            break;
        }
    }
    if (fv.m.m_duration_excl_break > fv.m.m_duration_incl_break + kTolerance) {
        flag("m_duration_excl_break > m_duration_incl_break");
    }
    if (std::abs(fv.b.b_click - (fv.b.b_unique + fv.b.b_revisit)) > kTolerance) {
        flag("b_click != b_unique + b_revisit");
    }
    if (fv.b.b_revisitunique > std::min(fv.b.b_unique, fv.b.b_revisit) + kTolerance) {
        flag("b_revisitunique > min(b_unique, b_revisit)");
    }
    if (fv.m.m_queries < fv.m.m_logical || fv.m.m_logical < 1.0) {
        flag("m_queries >= m_logical >= 1 violated");
    }
    if (std::abs(fv.b.b_serps - fv.m.m_queries * fv.b.b_avg_serps) >
        kTolerance * std::max(1.0, std::abs(fv.b.b_serps))) {
        flag("b_serps != m_queries * b_avg_serps");
    }
    return violations;
}

std::string_view to_string(Granularity granularity) {
    return granularity == Granularity::Mission ? "mission" : "logical_session";
}

std::optional<Granularity> parse_granularity(std::string_view text) {
    if (text == "mission") return Granularity::Mission;
    if (text == "logical_session") return Granularity::LogicalSession;
    return std::nullopt;
}

std::vector<FeatureUnit> make_units(const LogCorpus& corpus, Granularity granularity) {
    std::vector<FeatureUnit> units;
    for (const Mission& mission : corpus.missions) {
        if (granularity == Granularity::Mission) {
            units.push_back(whole_mission_unit(mission));
        } else {
            for (const LogicalSession& session : mission.sessions) {
                FeatureUnit unit;
                unit.id = session.id;
                unit.label = mission.label;
                unit.sessions = {&session};
                units.push_back(std::move(unit));
            }
        }
    }
    return units;
}

QueryFeatures extract_query_features(const FeatureUnit& unit) {
    std::vector<const QueryEvent*> queries = unit_queries(unit);
    QueryFeatures out;
    if (queries.empty()) return out;

    std::set<std::string> vocabulary;
    double min_terms = 0, max_terms = 0, sum_terms = 0;
    std::vector<std::string> lowered;
    lowered.reserve(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        std::vector<std::string> terms = tokenize(queries[i]->query_text);
        auto count = static_cast<double>(terms.size());
        for (std::string& term : terms) vocabulary.insert(std::move(term));
        if (i == 0) {
            min_terms = max_terms = count;
        } else {
            min_terms = std::min(min_terms, count);
            max_terms = std::max(max_terms, count);
        }
        sum_terms += count;
        lowered.push_back(to_lower(queries[i]->query_text));
    }
    out.q_min = min_terms;
    out.q_max = max_terms;
    out.q_avg = sum_terms / static_cast<double>(queries.size());
    out.q_unique = static_cast<double>(vocabulary.size());

    if (queries.size() == 1) {
        out.q_cos3 = 1.0;
        out.q_cos4 = 1.0;
        out.q_lehv = 0.0;
        return out;
    }
    double cos3 = 0, cos4 = 0, lehv = 0;
    for (std::size_t i = 0; i + 1 < lowered.size(); ++i) {
        cos3 += char_ngram_cosine(lowered[i], lowered[i + 1], 3);
        cos4 += char_ngram_cosine(lowered[i], lowered[i + 1], 4);
        lehv += static_cast<double>(levenshtein(lowered[i], lowered[i + 1]));
    }
    auto pairs = static_cast<double>(lowered.size() - 1);
    out.q_cos3 = cos3 / pairs;
    out.q_cos4 = cos4 / pairs;
    out.q_lehv = lehv / pairs;
    return out;
}

MissionFeatures extract_mission_features(const FeatureUnit& unit) {
    MissionFeatures out;
    std::size_t queries = 0;
    for (const LogicalSession* session : unit.sessions) queries += session->queries.size();
    out.m_queries = static_cast<double>(queries);
    out.m_logical = static_cast<double>(unit.sessions.size());
    if (queries == 0) return out;

    EpochSeconds first = 0, last = 0;
    double sum_spans = 0;
    bool seen = false;
    for (const LogicalSession* session : unit.sessions) {
        if (session->queries.empty()) continue;
        EpochSeconds start = session->start_time();
        EpochSeconds end = session->end_time();
        sum_spans += static_cast<double>(end - start);
        if (!seen) {
            first = start;
            last = end;
            seen = true;
        } else {
            first = std::min(first, start);
            last = std::max(last, end);
        }
    }
    out.m_duration_incl_break = static_cast<double>(last - first);
    // Overlapping sessions can push the sum past the total span; the
    // breaks-excluded duration is capped so the invariant holds.
    out.m_duration_excl_break = std::min(sum_spans, out.m_duration_incl_break);
    out.m_avg_incl_break = out.m_duration_incl_break / out.m_queries;
    out.m_avg_excl_break = out.m_duration_excl_break / out.m_queries;
    return out;
}

BrowsingFeatures extract_browsing_features(const FeatureUnit& unit) {
    std::vector<const QueryEvent*> queries = unit_queries(unit);
    BrowsingFeatures out;
    if (queries.empty()) return out;

    std::size_t clicks = 0;
    std::size_t queries_with_click = 0;
    std::size_t serps = queries.size();
    std::map<std::string_view, std::size_t> domain_hits;
    double cos3_sum = 0, cos4_sum = 0;
    for (const QueryEvent* q : queries) {
        if (!q->clicks.empty()) {
            ++queries_with_click;
            serps += q->clicks.size() - 1;
        }
        std::string lowered = to_lower(q->query_text);
        for (const ClickEvent& c : q->clicks) {
            ++clicks;
            ++domain_hits[c.domain];
            cos3_sum += char_ngram_cosine(lowered, c.domain, 3);
            cos4_sum += char_ngram_cosine(lowered, c.domain, 4);
        }
    }
    out.b_click = static_cast<double>(clicks);
    out.b_unique = static_cast<double>(domain_hits.size());
    out.b_revisit = out.b_click - out.b_unique;
    std::size_t revisited = 0;
    for (const auto& [domain, hits] : domain_hits) {
        if (hits >= 2) ++revisited;
    }
    out.b_revisitunique = static_cast<double>(revisited);
    out.b_clickrate = static_cast<double>(queries_with_click) / static_cast<double>(queries.size());
    if (clicks > 0) {
        out.b_cos3 = cos3_sum / static_cast<double>(clicks);
        out.b_cos4 = cos4_sum / static_cast<double>(clicks);
    }
    out.b_serps = static_cast<double>(serps);
    out.b_avg_serps = out.b_serps / static_cast<double>(queries.size());
    return out;
}

FeatureVector extract_all(const FeatureUnit& unit) {
    FeatureVector fv;
    fv.q = extract_query_features(unit);
    fv.m = extract_mission_features(unit);
    fv.b = extract_browsing_features(unit);
    return fv;
}

QueryFeatures extract_query_features(const Mission& mission) {
    return extract_query_features(whole_mission_unit(mission));
}

MissionFeatures extract_mission_features(const Mission& mission) {
    return extract_mission_features(whole_mission_unit(mission));
}

BrowsingFeatures extract_browsing_features(const Mission& mission) {
    return extract_browsing_features(whole_mission_unit(mission));
}

FeatureVector extract_all(const Mission& mission) {
    return extract_all(whole_mission_unit(mission));
}

FeatureVector extract_all(const LogicalSession& session) {
    FeatureUnit unit;
    unit.id = session.id;
    unit.sessions = {&session};
    return extract_all(unit);
}

std::vector<FeatureRow> featurize_corpus(const LogCorpus& corpus, Granularity granularity,
                                         int jobs) {
    std::vector<FeatureUnit> units = make_units(corpus, granularity);
    std::vector<FeatureRow> rows(units.size());
    if (jobs <= 0) jobs = omp_get_max_threads();
    auto n = static_cast<std::int64_t>(units.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::int64_t i = 0; i < n; ++i) {
        const FeatureUnit& unit = units[static_cast<std::size_t>(i)];
        FeatureRow& row = rows[static_cast<std::size_t>(i)];
        row.unit_id = unit.id;
        row.label = unit.label;
        row.features = extract_all(unit);
    }
    return rows;
}

std::vector<FeatureRow> featurize_corpus_serial(const LogCorpus& corpus,
                                                Granularity granularity) {
    std::vector<FeatureRow> rows;
    for (const FeatureUnit& unit : make_units(corpus, granularity)) {
        FeatureRow row;
        row.unit_id = unit.id;
        row.label = unit.label;
        row.features = extract_all(unit);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_feature_csv(std::ostream& out, const std::vector<FeatureRow>& rows) {
    out << csv_header() << '\n';
    for (const FeatureRow& row : rows) {
        if (row.unit_id.find_first_of(",\"\n") != std::string::npos) {
            throw ValidationError("unit id '" + row.unit_id + "' contains CSV delimiters");
        }
        std::string line = row.unit_id;
        line += ',';
        if (row.label) line += to_string(*row.label);
        for (double value : row.features.to_array()) {
            line += ',';
            append_double(line, value);
        }
        out << line << '\n';
    }
}

std::vector<FeatureRow> read_feature_csv(std::istream& in, std::string_view source) {
    std::vector<FeatureRow> rows;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    const std::string header = csv_header();
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != header) {
                throw ParseError(std::string(source), lineno,
                                 "unexpected header; want '" + header + "'");
            }
            header_seen = true;
            continue;
        }
        auto fields = split_commas(line);
        if (fields.size() != kFeatureCount + 2) {
            throw ParseError(std::string(source), lineno,
                             "expected " + std::to_string(kFeatureCount + 2) +
                                 " columns, got " + std::to_string(fields.size()));
        }
        FeatureRow row;
        row.unit_id = std::string(fields[0]);
        if (row.unit_id.empty()) {
            throw ParseError(std::string(source), lineno, "empty unit_id");
        }
        if (!fields[1].empty()) {
            auto label = parse_intent_label(fields[1]);
            if (!label) {
                throw ParseError(std::string(source), lineno,
                                 "unknown label '" + std::string(fields[1]) + "'");
            }
            row.label = *label;
        }
        std::array<double, kFeatureCount> values{};
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            std::string_view field = fields[f + 2];
            const char* first = field.data();
            const char* last = first + field.size();
            auto [ptr, ec] = std::from_chars(first, last, values[f]);
            if (ec != std::errc() || ptr != last) {
                throw ParseError(std::string(source), lineno,
                                 "bad number '" + std::string(field) + "' in column " +
                                     std::string(kFeatureNames[f]));
            }
        }
        row.features = FeatureVector::from_array(values);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace intent
