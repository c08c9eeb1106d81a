#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "intent/rng.hpp"
#include "intent/similarity.hpp"
#include "support/oracles.hpp"

using intent::char_ngram_cosine;
using intent::levenshtein;

namespace {

std::string random_string(intent::Rng& rng, std::size_t max_len) {
    static const std::string alphabet = "abcdefgh .";
    std::size_t len = static_cast<std::size_t>(rng.below(max_len + 1));
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    return s;
}

} // namespace

TEST_CASE("levenshtein matches full-matrix oracle on 1000 random pairs") {
    intent::Rng rng(0x5eed0001);
    for (int i = 0; i < 1000; ++i) {
        std::string a = random_string(rng, 12);
        std::string b = random_string(rng, 12);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(levenshtein(a, b) == oracle::levenshtein(a, b));
    }
}

TEST_CASE("levenshtein basics") {
    CHECK(levenshtein("", "") == 0);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("footbal lisbon", "football lisbon") == 1);
}

TEST_CASE("cosine matches enumeration oracle on 1000 random pairs, n=3 and n=4") {
    intent::Rng rng(0x5eed0002);
    for (int i = 0; i < 1000; ++i) {
        std::string a = random_string(rng, 12);
        std::string b = random_string(rng, 12);
        CAPTURE(a);
        CAPTURE(b);
        for (std::size_t n : {std::size_t{3}, std::size_t{4}}) {
            double got = char_ngram_cosine(a, b, n);
            double expected = oracle::ngram_cosine(a, b, n);
            CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("cosine frozen values") {
    CHECK(char_ngram_cosine("abcd", "abce", 3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(char_ngram_cosine("constantinople", "constantinople.org", 3) ==
          doctest::Approx(0.8660254037844387).epsilon(1e-12));
    CHECK(char_ngram_cosine("constantinople", "constantinople.org", 4) ==
          doctest::Approx(0.8563488385776753).epsilon(1e-12));
    CHECK(char_ngram_cosine("history istanbul", "istanbul archeology", 3) ==
          doctest::Approx(0.4244373438135827).epsilon(1e-12));
}

TEST_CASE("cosine short-string and identity rules") {
    // Below-n inputs degenerate to exact match.
    CHECK(char_ngram_cosine("ab", "ab", 3) == 1.0);
    CHECK(char_ngram_cosine("ab", "ba", 3) == 0.0);
    CHECK(char_ngram_cosine("", "", 3) == 1.0);
    CHECK(char_ngram_cosine("", "abc", 3) == 0.0);
    // Identical long inputs return exactly 1.0, no rounding residue.
    CHECK(char_ngram_cosine("constantinople", "constantinople", 3) == 1.0);
    // Callers lowercase; the function itself is case-sensitive.
    CHECK(char_ngram_cosine("ISTANBUL", "istanbul", 3) == 0.0);
}

TEST_CASE("cosine symmetry and range on random pairs") {
    intent::Rng rng(0x5eed0003);
    for (int i = 0; i < 200; ++i) {
        std::string a = random_string(rng, 10);
        std::string b = random_string(rng, 10);
        double ab = char_ngram_cosine(a, b, 3);
        double ba = char_ngram_cosine(b, a, 3);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-14));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("levenshtein metric axioms on random triples") {
    intent::Rng rng(0x5eed0004);
    for (int i = 0; i < 200; ++i) {
        std::string a = random_string(rng, 8);
        std::string b = random_string(rng, 8);
        std::string c = random_string(rng, 8);
        std::size_t ab = levenshtein(a, b);
        std::size_t bc = levenshtein(b, c);
        std::size_t ac = levenshtein(a, c);
        CHECK(levenshtein(a, a) == 0);
        CHECK(ab == levenshtein(b, a));
        CHECK(ac <= ab + bc);
    }
}
