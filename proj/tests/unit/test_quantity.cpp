#include <doctest.h>

#include <random>

#include "calaw/quantity.hpp"

using namespace calaw;

TEST_CASE("vacuum sets are exact preimages of zero") {
    CHECK(Quantity::identity(2).vacuum_set() == std::vector<Symbol>{0});
    CHECK(Quantity::constant(2, 0).vacuum_set() == std::vector<Symbol>{0, 1});
    Quantity none = Quantity::rational(2, {Rational(1), Rational(2)});
    CHECK(none.vacuum_set().empty());
    CHECK_FALSE(none.designated_vacuum().has_value());

    Quantity parity = Quantity::mod(2, 2, {0, 1});
    CHECK(parity.vacuum_set() == std::vector<Symbol>{0});

    Quantity vec = Quantity::vector_valued(3, 2, {{Rational(0), Rational(0)},
                                                  {Rational(1), Rational(0)},
                                                  {Rational(0), Rational(0)}});
    CHECK(vec.vacuum_set() == std::vector<Symbol>{0, 2});
    CHECK(vec.designated_vacuum() == Symbol{0});
}

TEST_CASE("totals over sparse configurations") {
    Quantity id = Quantity::identity(2);
    Configuration a(1, 0, {{{2}, 1}, {{5}, 1}});
    CHECK(total(id, a).rat[0] == 2);

    Configuration empty(1, 0);
    CHECK(total(id, empty).is_zero());

    // parity of three occupied cells
    Quantity parity = Quantity::mod(2, 2, {0, 1});
    Configuration three(1, 0, {{{0}, 1}, {{4}, 1}, {{9}, 1}});
    CHECK(total(parity, three).residue == 1);

    // background must be vacuum or the sum diverges
    Configuration bad(1, 1, {{{0}, 0}});
    CHECK_THROWS_WITH_AS(total(id, bad), doctest::Contains("divergent"), std::domain_error);
}

TEST_CASE("windowed totals") {
    Quantity id = Quantity::identity(2);
    Configuration ones(1, 1);  // constant 1 everywhere
    Window w;
    for (int i = 0; i < 7; ++i) w.insert({i});
    CHECK(total_window(id, ones, w).rat[0] == 7);
    CHECK(total_window(id, ones, {}).is_zero());

    TorusConfig t({6}, {1, 0, 1, 1, 0, 0});
    Window full;
    for (int i = 0; i < 6; ++i) full.insert({i});
    CHECK(total_window(id, t, full).rat[0] == 3);
}

TEST_CASE("total equals any window containing the support") {
    std::mt19937 rng(17);
    Quantity id = Quantity::identity(3);
    std::uniform_int_distribution<int> pos(-8, 8), sym(0, 2);
    for (int t = 0; t < 200; ++t) {
        Configuration a(1, 0);
        for (int k = 0; k < 6; ++k) a.set({pos(rng)}, sym(rng));
        Window w;
        for (int i = -10; i <= 10; ++i) w.insert({i});
        CHECK(total(id, a) == total_window(id, a, w));
    }
}

TEST_CASE("totals add over disjoint supports") {
    Quantity id = Quantity::identity(4);
    Configuration left(1, 0, {{{-3}, 2}, {{-1}, 1}});
    Configuration right(1, 0, {{{2}, 3}});
    Configuration both = left;
    for (const auto& [p, s] : right.overrides()) both.set(p, s);
    CHECK(total(id, both).rat[0] == total(id, left).rat[0] + total(id, right).rat[0]);
}

TEST_CASE("mod values are reduced at construction") {
    Quantity q = Quantity::mod(3, 5, {-1, 7, 10});
    CHECK(q.residue(0) == 4);
    CHECK(q.residue(1) == 2);
    CHECK(q.residue(2) == 0);
}

TEST_CASE("natural-valued detection") {
    CHECK(Quantity::identity(3).is_natural());
    CHECK_FALSE(Quantity::rational(2, {Rational(0), make_rational(1, 2)}).is_natural());
    CHECK_FALSE(Quantity::rational(2, {Rational(0), Rational(-1)}).is_natural());
    CHECK_FALSE(Quantity::mod(2, 2, {0, 1}).is_natural());
}
