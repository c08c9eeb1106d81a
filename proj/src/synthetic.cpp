#include "intent/synthetic.hpp"

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "intent/rng.hpp"
#include "intent/text.hpp"

namespace intent {
namespace {

constexpr std::array<std::string_view, 40> kSyllables = {
    "ba", "be", "bi", "bo", "bu", "da", "de", "di", "do", "du", "ka", "ke", "ki", "ko",
    "ku", "la", "le", "li", "lo", "lu", "ma", "me", "mi", "mo", "mu", "na", "ne", "ni",
    "no", "nu", "ra", "re", "ri", "ro", "ru", "sa", "se", "si", "so", "su"};

// Missions live in disjoint time windows so (user, timestamp) keys are
// unique corpus-wide and chronological order equals generation order.
constexpr EpochSeconds kBaseTime = 1356000000; // 2012-12-20 10:40:00
constexpr EpochSeconds kWindow = 1000000;

std::string make_word(Rng& rng, int syllables) {
    std::string word;
    for (int i = 0; i < syllables; ++i) {
        word += kSyllables[static_cast<std::size_t>(rng.below(kSyllables.size()))];
    }
    return word;
}

std::string pad4(std::size_t n) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%04zu", n);
    return buffer;
}

struct Emitter {
    std::vector<QueryEvent> queries;
    std::uint64_t query_seq = 0;
    std::uint64_t click_seq = 0;

    QueryEvent& add_query(const Mission& shell, const std::string& session_id,
                          const std::string& physical_id, std::string text, EpochSeconds t) {
        QueryEvent q;
        q.user_id = shell.user_id;
        q.query_text = std::move(text);
        q.timestamp = t;
        q.mission_id = shell.id;
        q.logical_session_id = session_id;
        q.physical_session_id = physical_id;
        q.seq = query_seq++;
        queries.push_back(std::move(q));
        return queries.back();
    }

    // `q` must be the most recently added query.
    void add_click(QueryEvent& q, const std::string& url, EpochSeconds t, int rank) {
        ClickEvent c;
        c.url = url;
        c.domain = extract_domain(url);
        c.timestamp = t;
        c.rank = rank;
        c.seq = click_seq++;
        q.clicks.push_back(std::move(c));
    }
};

Mission shell_for(std::string_view tag, std::size_t index, std::size_t global) {
    Mission shell;
    shell.id = "syn-" + std::string(tag) + "-" + pad4(index);
    shell.user_id = "user-" + pad4(global % 7 + 1);
    return shell;
}

void emit_informational(Emitter& em, Rng& rng, const Mission& shell, EpochSeconds base) {
    std::vector<std::string> pool;
    for (int i = 0; i < 5; ++i) pool.push_back(make_word(rng, 3));

    auto n_queries = static_cast<std::size_t>(rng.between(4, 8));
    auto n_sessions = static_cast<std::size_t>(rng.between(2, 3));
    if (n_sessions > n_queries) n_sessions = n_queries;

    EpochSeconds t = base;
    std::size_t session = 0;
    std::size_t emitted_in_session = 0;
    std::size_t per_session = (n_queries + n_sessions - 1) / n_sessions;
    for (std::size_t i = 0; i < n_queries; ++i) {
        if (emitted_in_session == per_session && session + 1 < n_sessions) {
            ++session;
            emitted_in_session = 0;
            t += rng.between(3600, 20000);
        } else if (i > 0) {
            t += rng.between(30, 300);
        }
        std::string text = rng.pick(pool);
        auto extra_words = static_cast<int>(rng.between(1, 3));
        for (int w = 0; w < extra_words; ++w) text += " " + rng.pick(pool);

        std::string session_id = shell.id + "-l" + std::to_string(session + 1);
        std::string physical_id = shell.id + "-p" + std::to_string(session + 1);
        QueryEvent& q = em.add_query(shell, session_id, physical_id, std::move(text), t);

        auto n_clicks = static_cast<int>(rng.between(1, 3));
        static const std::vector<std::string> tlds = {".com", ".org", ".net", ".info"};
        for (int c = 0; c < n_clicks; ++c) {
            std::string domain = make_word(rng, 3) + rng.pick(tlds);
            std::string url = "http://www." + domain + "/" + make_word(rng, 2);
            em.add_click(q, url, t + 5 + 7 * c + static_cast<EpochSeconds>(rng.below(5)),
                         static_cast<int>(rng.between(1, 10)));
        }
        ++emitted_in_session;
    }
}

void emit_navigational(Emitter& em, Rng& rng, const Mission& shell, EpochSeconds base) {
    std::string brand = make_word(rng, 3);
    auto n_queries = static_cast<std::size_t>(1 + (rng.chance(0.3) ? 1 : 0));

    EpochSeconds t = base;
    std::string session_id = shell.id + "-l1";
    std::string physical_id = shell.id + "-p1";
    for (std::size_t i = 0; i < n_queries; ++i) {
        if (i > 0) t += rng.between(5, 15);
        QueryEvent& q = em.add_query(shell, session_id, physical_id, brand, t);
        if (i + 1 == n_queries) {
            std::string url = "http://www." + brand + ".com/";
            em.add_click(q, url, t + rng.between(2, 8), 1);
        }
    }
}

void emit_transactional(Emitter& em, Rng& rng, const Mission& shell, EpochSeconds base) {
    std::string product = make_word(rng, 3);
    std::vector<std::string> shops = {make_word(rng, 2) + "shop.com",
                                      make_word(rng, 2) + "store.com"};
    static const std::vector<std::string> forms = {"buy ", "order ", "cheap "};

    auto n_queries = static_cast<std::size_t>(rng.between(2, 4));
    auto n_sessions = static_cast<std::size_t>(n_queries >= 3 && rng.chance(0.5) ? 2 : 1);

    EpochSeconds t = base;
    std::size_t split = n_queries - n_queries / n_sessions;
    for (std::size_t i = 0; i < n_queries; ++i) {
        std::size_t session = n_sessions == 2 && i >= split ? 1 : 0;
        if (i > 0) t += (n_sessions == 2 && i == split) ? rng.between(1800, 5000)
                                                        : rng.between(20, 120);
        std::string text = rng.chance(0.5) ? rng.pick(forms) + product : product + " price";
        std::string session_id = shell.id + "-l" + std::to_string(session + 1);
        std::string physical_id = shell.id + "-p" + std::to_string(session + 1);
        QueryEvent& q = em.add_query(shell, session_id, physical_id, std::move(text), t);

        auto n_clicks = static_cast<int>(rng.between(3, 6));
        for (int c = 0; c < n_clicks; ++c) {
            const std::string& shop = shops[static_cast<std::size_t>(c) % shops.size()];
            std::string url = "http://" + shop + "/item/" + make_word(rng, 2);
            em.add_click(q, url, t + 3 + 3 * c, static_cast<int>(rng.between(1, 5)));
        }
    }
}

} // namespace

LogCorpus generate_synthetic_corpus(const SyntheticSpec& spec) {
    Emitter em;
    LabelMap labels;
    std::size_t global = 0;

    struct ClassPlan {
        std::string_view tag;
        IntentLabel label;
        std::size_t count;
        std::uint64_t stream;
    };
    const ClassPlan plans[] = {
        {"inf", IntentLabel::Informational, spec.informational, 1},
        {"nav", IntentLabel::Navigational, spec.navigational, 2},
        {"tra", IntentLabel::Transactional, spec.transactional, 3},
    };
    for (const ClassPlan& plan : plans) {
        for (std::size_t i = 0; i < plan.count; ++i, ++global) {
            Rng rng(derive_seed(spec.seed, plan.stream, i));
            Mission shell = shell_for(plan.tag, i, global);
            EpochSeconds base = kBaseTime + static_cast<EpochSeconds>(global) * kWindow;
            switch (plan.label) {
            case IntentLabel::Informational: emit_informational(em, rng, shell, base); break;
            case IntentLabel::Navigational: emit_navigational(em, rng, shell, base); break;
            default: emit_transactional(em, rng, shell, base); break;
            }
            labels.by_mission.emplace(shell.id, plan.label);
        }
    }
    return assemble_corpus(std::move(em.queries), labels);
}

} // namespace intent
