#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "intent/error.hpp"
#include "intent/features.hpp"
#include "intent/ingest.hpp"
#include "intent/synthetic.hpp"

namespace {

constexpr double kTol = 1e-9;

intent::LogCorpus load_fixture() {
    std::ifstream queries(std::string(FIXTURE_DIR) + "/table1/queries.tsv");
    REQUIRE(queries);
    auto events = intent::parse_query_log(queries);
    std::ifstream clicks(std::string(FIXTURE_DIR) + "/table1/clicks.tsv");
    REQUIRE(clicks);
    intent::parse_click_log(clicks, events);
    std::ifstream labels_in(std::string(FIXTURE_DIR) + "/table1/labels.tsv");
    REQUIRE(labels_in);
    auto labels = intent::parse_labels(labels_in);
    return intent::assemble_corpus(std::move(events), labels);
}

intent::FeatureVector features_of(const intent::LogCorpus& corpus, const std::string& id) {
    const intent::Mission* mission = corpus.find_mission(id);
    REQUIRE(mission != nullptr);
    return intent::extract_all(*mission);
}

} // namespace

TEST_CASE("query features of the 8-query example mission match hand-computed values") {
    auto fv = features_of(load_fixture(), "M1");
    CHECK(fv.q.q_min == 1);
    CHECK(fv.q.q_max == 2);
    CHECK(fv.q.q_avg == doctest::Approx(1.625).epsilon(kTol));
    CHECK(fv.q.q_unique == 8);
    CHECK(fv.q.q_cos3 == doctest::Approx(0.3663521931737691).epsilon(kTol));
    CHECK(fv.q.q_cos4 == doctest::Approx(0.34600935125502985).epsilon(kTol));
    CHECK(fv.q.q_lehv == doctest::Approx(10.0).epsilon(kTol));
}

TEST_CASE("mission features of the 8-query example mission match hand-computed values") {
    auto fv = features_of(load_fixture(), "M1");
    CHECK(fv.m.m_queries == 8);
    CHECK(fv.m.m_logical == 5);
    CHECK(fv.m.m_duration_incl_break == doctest::Approx(98694.0).epsilon(kTol));
    CHECK(fv.m.m_duration_excl_break == doctest::Approx(3983.0).epsilon(kTol));
    CHECK(fv.m.m_avg_incl_break == doctest::Approx(12336.75).epsilon(kTol));
    CHECK(fv.m.m_avg_excl_break == doctest::Approx(497.875).epsilon(kTol));
}

TEST_CASE("browsing features without clicks are zero except the per-query SERP floor") {
    auto fv = features_of(load_fixture(), "M1");
    CHECK(fv.b.b_click == 0);
    CHECK(fv.b.b_unique == 0);
    CHECK(fv.b.b_revisit == 0);
    CHECK(fv.b.b_revisitunique == 0);
    CHECK(fv.b.b_clickrate == 0.0);
    CHECK(fv.b.b_cos3 == 0.0);
    CHECK(fv.b.b_cos4 == 0.0);
    CHECK(fv.b.b_avg_serps == doctest::Approx(1.0).epsilon(kTol));
    CHECK(fv.b.b_serps == 8);
}

TEST_CASE("three-query mission with a misspelling matches hand-computed values") {
    auto fv = features_of(load_fixture(), "M3");
    CHECK(fv.q.q_min == 2);
    CHECK(fv.q.q_max == 3);
    CHECK(fv.q.q_avg == doctest::Approx(7.0 / 3.0).epsilon(kTol));
    CHECK(fv.q.q_unique == 6);
    CHECK(fv.q.q_cos3 == doctest::Approx(0.4403524229639897).epsilon(kTol));
    CHECK(fv.q.q_cos4 == doctest::Approx(0.39167472590032015).epsilon(kTol));
    CHECK(fv.q.q_lehv == doctest::Approx(8.5).epsilon(kTol));
    // Two clicks on three queries.
    CHECK(fv.b.b_click == 2);
    CHECK(fv.b.b_unique == 2);
    CHECK(fv.b.b_revisit == 0);
    CHECK(fv.b.b_clickrate == doctest::Approx(2.0 / 3.0).epsilon(kTol));
    CHECK(fv.b.b_serps == 3);
}

TEST_CASE("single-query unit degenerates cleanly") {
    auto fv = features_of(load_fixture(), "M2");
    CHECK(fv.q.q_min == 3);
    CHECK(fv.q.q_max == 3);
    CHECK(fv.q.q_unique == 3);
    // No consecutive pair: similarity defaults to identity, distance to 0.
    CHECK(fv.q.q_cos3 == 1.0);
    CHECK(fv.q.q_cos4 == 1.0);
    CHECK(fv.q.q_lehv == 0.0);
    CHECK(fv.m.m_queries == 1);
    CHECK(fv.m.m_logical == 1);
    // One click 17 seconds after the query stretches the duration.
    CHECK(fv.m.m_duration_incl_break == doctest::Approx(17.0).epsilon(kTol));
    CHECK(fv.b.b_clickrate == doctest::Approx(1.0).epsilon(kTol));
}

TEST_CASE("durations include click timestamps") {
    const std::string header =
        "user_id\tquery\ttimestamp\tmission_id\tlogical_session_id\tphysical_session_id\n";
    std::istringstream qin(header + "u1\talpha beta\t2012-01-01 10:00:00\tM1\tL1\tP1\n");
    auto queries = intent::parse_query_log(qin);
    std::istringstream cin_(
        "user_id\tquery_timestamp\turl\tclick_timestamp\trank\n"
        "u1\t2012-01-01 10:00:00\thttp://a.com/\t2012-01-01 10:05:00\t1\n");
    intent::parse_click_log(cin_, queries);
    auto corpus = intent::assemble_corpus(std::move(queries));
    auto fv = intent::extract_all(corpus.missions[0]);
    CHECK(fv.m.m_duration_incl_break == doctest::Approx(300.0).epsilon(kTol));
    CHECK(fv.m.m_duration_excl_break == doctest::Approx(300.0).epsilon(kTol));
}

TEST_CASE("features are invariant under time translation") {
    intent::SyntheticSpec spec;
    spec.informational = 4;
    spec.navigational = 4;
    spec.transactional = 4;
    spec.seed = 31337;
    auto corpus = intent::generate_synthetic_corpus(spec);

    auto shifted = corpus;
    for (auto& mission : shifted.missions) {
        for (auto& session : mission.sessions) {
            for (auto& query : session.queries) {
                query.timestamp += 86400 * 365;
                for (auto& click : query.clicks) click.timestamp += 86400 * 365;
            }
        }
    }
    for (std::size_t i = 0; i < corpus.missions.size(); ++i) {
        auto a = intent::extract_all(corpus.missions[i]).to_array();
        auto b = intent::extract_all(shifted.missions[i]).to_array();
        CHECK(a == b);
    }
}

TEST_CASE("logical-session granularity yields one unit per session") {
    auto corpus = load_fixture();
    auto units = intent::make_units(corpus, intent::Granularity::LogicalSession);
    CHECK(units.size() == 8);
    auto missions = intent::make_units(corpus, intent::Granularity::Mission);
    CHECK(missions.size() == 3);

    // Session units inherit the mission label.
    for (const auto& unit : units) {
        REQUIRE(unit.label.has_value());
    }

    // A session unit never counts more than one logical session.
    auto rows = intent::featurize_corpus(corpus, intent::Granularity::LogicalSession, 1);
    for (const auto& row : rows) {
        CHECK(row.features.m.m_logical == 1);
    }
}

TEST_CASE("parallel and serial featurization agree") {
    intent::SyntheticSpec spec;
    spec.informational = 30;
    spec.navigational = 30;
    spec.transactional = 30;
    spec.seed = 5150;
    auto corpus = intent::generate_synthetic_corpus(spec);
    for (auto granularity :
         {intent::Granularity::Mission, intent::Granularity::LogicalSession}) {
        auto serial = intent::featurize_corpus_serial(corpus, granularity);
        auto parallel = intent::featurize_corpus(corpus, granularity, 4);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].unit_id == parallel[i].unit_id);
            CHECK(serial[i].features.to_array() == parallel[i].features.to_array());
        }
    }
}

TEST_CASE("feature invariants hold over a fuzzed synthetic corpus") {
    intent::SyntheticSpec spec;
    spec.informational = 120;
    spec.navigational = 120;
    spec.transactional = 120;
    spec.seed = 90210;
    auto corpus = intent::generate_synthetic_corpus(spec);
    for (auto granularity :
         {intent::Granularity::Mission, intent::Granularity::LogicalSession}) {
        for (const auto& row : intent::featurize_corpus(corpus, granularity, 0)) {
            auto violations = intent::check_feature_invariants(row.features);
            CAPTURE(row.unit_id);
            CHECK(violations.empty());
        }
    }
}

TEST_CASE("navigational missions repeat queries that match the clicked domain") {
    intent::SyntheticSpec spec;
    spec.informational = 40;
    spec.navigational = 40;
    spec.transactional = 40;
    spec.seed = 424242;
    auto corpus = intent::generate_synthetic_corpus(spec);

    double nav_cos = 0.0, inf_cos = 0.0, nav_rev = 0.0, tra_rev = 0.0;
    std::size_t nav = 0, inf = 0, tra = 0;
    for (const auto& mission : corpus.missions) {
        auto fv = intent::extract_all(mission);
        switch (*mission.label) {
            case intent::IntentLabel::Navigational:
                nav_cos += fv.b.b_cos3;
                nav_rev += fv.b.b_revisit;
                ++nav;
                break;
            case intent::IntentLabel::Informational:
                inf_cos += fv.b.b_cos3;
                ++inf;
                break;
            case intent::IntentLabel::Transactional:
                tra_rev += fv.b.b_revisit;
                ++tra;
                break;
            default:
                break;
        }
    }
    // Query/click-domain similarity separates navigational from
    // informational behaviour; repeat visits separate transactional.
    CHECK(nav_cos / static_cast<double>(nav) > inf_cos / static_cast<double>(inf) + 0.2);
    CHECK(tra_rev / static_cast<double>(tra) > nav_rev / static_cast<double>(nav) + 1.0);
}

TEST_CASE("feature CSV round-trips exactly") {
    intent::SyntheticSpec spec;
    spec.informational = 6;
    spec.navigational = 6;
    spec.transactional = 6;
    spec.seed = 606;
    auto corpus = intent::generate_synthetic_corpus(spec);
    auto rows = intent::featurize_corpus(corpus, intent::Granularity::Mission, 1);

    std::ostringstream out;
    intent::write_feature_csv(out, rows);
    std::istringstream in(out.str());
    auto again = intent::read_feature_csv(in, "roundtrip.csv");

    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(again[i].unit_id == rows[i].unit_id);
        CHECK(again[i].label == rows[i].label);
        // Bit-exact: the writer emits shortest round-trip decimals.
        CHECK(again[i].features.to_array() == rows[i].features.to_array());
    }

    std::ostringstream out2;
    intent::write_feature_csv(out2, again);
    CHECK(out2.str() == out.str());
}

TEST_CASE("feature CSV reader rejects malformed input") {
    {
        std::istringstream in("wrong,header\n");
        CHECK_THROWS_AS(intent::read_feature_csv(in, "bad.csv"), intent::ParseError);
    }
    {
        std::ostringstream header;
        header << "unit_id,label";
        for (std::string_view name : intent::kFeatureNames) header << ',' << name;
        std::istringstream in(header.str() + "\nu1,informational,1,2\n");
        CHECK_THROWS_AS(intent::read_feature_csv(in, "bad.csv"), intent::ParseError);
    }
}

TEST_CASE("feature names and order are stable") {
    REQUIRE(intent::kFeatureNames.size() == intent::kFeatureCount);
    CHECK(intent::kFeatureNames.front() == std::string("q_min"));
    CHECK(intent::kFeatureNames[7] == std::string("m_queries"));
    CHECK(intent::kFeatureNames[13] == std::string("b_click"));
    CHECK(intent::kFeatureNames.back() == std::string("b_serps"));

    intent::FeatureVector fv;
    fv.q.q_min = 41;
    fv.b.b_serps = 17;
    auto array = fv.to_array();
    CHECK(array[0] == 41);
    CHECK(array[21] == 17);
    auto back = intent::FeatureVector::from_array(array);
    CHECK(back.to_array() == array);
}
