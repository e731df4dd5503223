#include <doctest.h>

#include <random>

#include "calaw/engine.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

using namespace calaw;

TEST_CASE("wolfram tables expand bit by bit") {
    LocalRule r184 = from_wolfram(184);
    for (int k = 0; k < 8; ++k) CHECK(r184.table()[k] == ((184 >> k) & 1));

    // 204 is the center projection
    LocalRule r204 = from_wolfram(204);
    for (Symbol a = 0; a < 2; ++a)
        for (Symbol b = 0; b < 2; ++b)
            for (Symbol c = 0; c < 2; ++c) CHECK(r204.apply_local({a, b, c}) == b);

    // 150 adds its window mod 2
    LocalRule r150 = from_wolfram(150);
    for (Symbol a = 0; a < 2; ++a)
        for (Symbol b = 0; b < 2; ++b)
            for (Symbol c = 0; c < 2; ++c) CHECK(r150.apply_local({a, b, c}) == (a + b + c) % 2);

    CHECK_THROWS(from_wolfram(-1));
    CHECK_THROWS(from_wolfram(256));
}

TEST_CASE("wolfram codec round-trips") {
    for (int n = 0; n < 256; ++n) {
        LocalRule r = from_wolfram(n);
        REQUIRE(to_wolfram(r).has_value());
        CHECK(*to_wolfram(r) == n);
    }
    // non-elementary rules have no number
    LocalRule wide(Alphabet(2), Neighborhood::box(1, 2), std::vector<Symbol>(32, 0));
    CHECK_FALSE(to_wolfram(wide).has_value());
}

TEST_CASE("local application looks up the mixed-radix code") {
    LocalRule r184 = from_wolfram(184);
    CHECK(r184.apply_local({1, 1, 0}) == ((184 >> 6) & 1));
    CHECK(r184.apply_local({1, 1, 0}) == 0);
    CHECK(r184.apply_local({1, 0, 0}) == 1);
}

TEST_CASE("patch application on known patterns") {
    LocalRule r204 = from_wolfram(204);
    std::vector<Symbol> p{1, 0, 1, 1, 0};
    CHECK(r204.apply_patch(p) == std::vector<Symbol>{0, 1, 1});

    // one car with road ahead rolls right
    LocalRule r184 = from_wolfram(184);
    CHECK(r184.apply_patch({0, 1, 0, 0, 0}) == std::vector<Symbol>{0, 1, 0});
    CHECK(r184.apply_patch({0, 0, 0, 0, 0}) == std::vector<Symbol>{0, 0, 0});
}

TEST_CASE("patch equals independent local applications") {
    std::mt19937 rng(23);
    for (int t = 0; t < 10000; ++t) {
        int a = 2 + (t % 2);
        LocalRule rule = [&] {
            std::uniform_int_distribution<int> sym(0, a - 1);
            std::vector<Symbol> table(a * a * a);
            for (auto& s : table) s = sym(rng);
            return LocalRule(Alphabet(a), Neighborhood::box(1, 1), std::move(table));
        }();
        std::uniform_int_distribution<int> sym(0, a - 1);
        std::vector<Symbol> pat(5);
        for (auto& s : pat) s = sym(rng);
        auto got = rule.apply_patch(pat);
        for (int v = -1; v <= 1; ++v) {
            std::vector<Symbol> win(pat.begin() + (v + 1), pat.begin() + (v + 4));
            CHECK(got[v + 1] == rule.apply_local(win));
        }
    }
}

TEST_CASE("pattern codec round-trips") {
    std::mt19937 rng(3);
    for (int t = 0; t < 2000; ++t) {
        int a = 2 + (t % 3);
        int len = 1 + (t % 6);
        std::uniform_int_distribution<int> sym(0, a - 1);
        std::vector<Symbol> p(len);
        for (auto& s : p) s = sym(rng);
        CHECK(decode_pattern(encode_pattern(p, a), a, len) == p);
    }
}

TEST_CASE("rule construction rejects malformed tables") {
    CHECK_THROWS(LocalRule(Alphabet(2), Neighborhood::box(1, 1), {0, 1, 0}));
    CHECK_THROWS(LocalRule(Alphabet(2), Neighborhood::box(1, 1),
                           {0, 1, 0, 1, 0, 1, 0, 2}));  // symbol out of range
    CHECK_THROWS(Alphabet(0));
    CHECK_THROWS(Alphabet(2, {"a", "a"}));
}
