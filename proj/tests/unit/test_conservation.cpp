#include <doctest.h>

#include <random>

#include "calaw/conservation.hpp"
#include "calaw/engine.hpp"

using namespace calaw;

namespace {

LocalRule random_rule(std::mt19937& rng, int a) {
    std::uniform_int_distribution<int> sym(0, a - 1);
    std::vector<Symbol> table(a * a * a);
    for (auto& s : table) s = sym(rng);
    return LocalRule(Alphabet(a), Neighborhood::box(1, 1), std::move(table));
}

Quantity random_rational_quantity(std::mt19937& rng, int a) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    RatVec v(a);
    for (auto& x : v) x = make_rational(num(rng), den(rng));
    return Quantity::rational(a, std::move(v));
}

}  // namespace

TEST_CASE("traffic conserves car count, parity rule conserves parity") {
    CHECK(is_conserved(from_wolfram(184), Quantity::identity(2)).conserved);
    CHECK(is_conserved(from_wolfram(150), Quantity::mod(2, 2, {0, 1})).conserved);
}

TEST_CASE("the parity rule does not conserve the rational count") {
    auto res = is_conserved(from_wolfram(150), Quantity::identity(2));
    REQUIRE_FALSE(res.conserved);
    REQUIRE(res.witness.has_value());
    CHECK_FALSE(res.witness_before == res.witness_after);
    // recompute the witness totals through the evolution path
    Quantity id = Quantity::identity(2);
    TotalValue before = total(id, *res.witness);
    TotalValue after = total(id, step(from_wolfram(150), *res.witness));
    CHECK(before == res.witness_before);
    CHECK(after == res.witness_after);
}

TEST_CASE("missing vacuum is flagged") {
    Quantity shifted = Quantity::rational(2, {Rational(1), Rational(2)});
    auto res = is_conserved(from_wolfram(204), shifted);
    CHECK(res.conserved);
    CHECK(res.empty_vacuum);
}

TEST_CASE("basis dimensions for landmark rules") {
    CHECK(conserved_basis(from_wolfram(184)).dimension() == 2);
    CHECK(conserved_basis(from_wolfram(204)).dimension() == 2);
    CHECK(conserved_basis(from_wolfram(90)).dimension() == 1);
    CHECK(conserved_basis(from_wolfram(150)).dimension() == 1);

    // the car count lies in the traffic basis
    ConservationBasis b184 = conserved_basis(from_wolfram(184));
    CHECK(basis_contains(b184, Quantity::identity(2)));

    // dimension 1 means constants only
    ConservationBasis b90 = conserved_basis(from_wolfram(90));
    REQUIRE(b90.dimension() == 1);
    CHECK(b90.trivial[0]);
}

TEST_CASE("constants always lie in the span") {
    std::mt19937 rng(101);
    for (int t = 0; t < 100; ++t) {
        LocalRule rule = random_rule(rng, 2 + t % 2);
        ConservationBasis basis = conserved_basis(rule);
        CHECK(basis.dimension() >= 1);
        CHECK(basis_contains(basis, Quantity::constant(rule.alphabet().size, Rational(1))));
    }
}

TEST_CASE("membership in the basis equals the direct test") {
    std::mt19937 rng(103);
    for (int t = 0; t < 300; ++t) {
        int a = 2 + t % 2;
        LocalRule rule = random_rule(rng, a);
        ConservationBasis basis = conserved_basis(rule);
        Quantity phi = random_rational_quantity(rng, a);
        CHECK(is_conserved(rule, phi).conserved == basis_contains(basis, phi));
    }
}

TEST_CASE("mod-2 basis of the parity rule") {
    ConservationBasis b = conserved_basis_mod(from_wolfram(150), 2);
    CHECK(basis_contains(b, Quantity::mod(2, 2, {0, 1})));
    // frozen by an independent scan: every residue valuation balances
    CHECK(b.dimension() == 2);
}

TEST_CASE("mod basis agrees with the direct test on random residue valuations") {
    std::mt19937 rng(107);
    for (int t = 0; t < 200; ++t) {
        int a = 2 + t % 2;
        std::int64_t m = 2 + t % 4;  // includes composite moduli
        LocalRule rule = random_rule(rng, a);
        ConservationBasis basis = conserved_basis_mod(rule, m);
        std::uniform_int_distribution<std::int64_t> res(0, m - 1);
        std::vector<std::int64_t> vals(a);
        for (auto& v : vals) v = res(rng);
        Quantity phi = Quantity::mod(a, m, vals);
        CHECK(is_conserved(rule, phi).conserved == basis_contains(basis, phi));
    }
}

TEST_CASE("torus sweeps certify and refute conservation") {
    Quantity id = Quantity::identity(2);
    CHECK(conserved_on_torus_exhaustive(from_wolfram(184), id, {8}).conserved);
    auto bad = conserved_on_torus_exhaustive(from_wolfram(110), id, {8});
    REQUIRE_FALSE(bad.conserved);
    REQUIRE(bad.counterexample.has_value());
    // counterexample really moves the total
    CHECK_FALSE(total(id, *bad.counterexample) ==
                total(id, step(from_wolfram(110), *bad.counterexample)));

    CHECK(conserved_on_torus_exhaustive(from_wolfram(204), id, {6}).conserved);
    CHECK(conserved_on_torus_sampled(from_wolfram(184), id, {64}, 500, 1).conserved);
    CHECK_FALSE(conserved_on_torus_sampled(from_wolfram(110), id, {64}, 500, 1).conserved);

    CHECK_THROWS_AS(conserved_on_torus_exhaustive(from_wolfram(184), id, {64}),
                    std::overflow_error);
    CHECK_THROWS(conserved_on_torus_exhaustive(from_wolfram(184), id, {4}));
}

TEST_CASE("sandwich bounds for the identity rule are tight") {
    Quantity id = Quantity::identity(2);
    Configuration a(1, 0, {{{0}, 1}, {{2}, 1}});
    Window w{{0}, {1}, {2}};
    auto rep = sandwich_check(from_wolfram(204), id, a, w);
    CHECK(rep.holds());
    CHECK(rep.image_total.rat[0] == 2);
}

TEST_CASE("sandwich bounds hold for traffic and fail for rule 110") {
    std::mt19937 rng(113);
    Quantity id = Quantity::identity(2);
    std::uniform_int_distribution<int> pos(-8, 8);
    std::uniform_int_distribution<int> count(0, 8);
    auto random_case = [&](LocalRule rule) {
        Configuration a(1, 0);
        int n = count(rng);
        for (int k = 0; k < n; ++k) a.set({pos(rng)}, 1);
        Window w;
        int m = count(rng);
        for (int k = 0; k < m; ++k) w.insert({pos(rng)});
        return sandwich_check(rule, id, a, w);
    };
    for (int t = 0; t < 1000; ++t) CHECK(random_case(from_wolfram(184)).holds());

    bool violated = false;
    for (int t = 0; t < 2000 && !violated; ++t) violated = !random_case(from_wolfram(110)).holds();
    CHECK(violated);
}

TEST_CASE("sandwich bounds on the torus") {
    Quantity id = Quantity::identity(2);
    TorusConfig t({7}, {1, 0, 1, 1, 0, 0, 1});
    Window w{{1}, {2}, {3}, {9}};  // 9 wraps onto 2
    auto rep = sandwich_check(from_wolfram(184), id, t, w);
    CHECK(rep.holds());
}

TEST_CASE("sandwich refuses signed quantities") {
    Quantity signedq = Quantity::rational(2, {Rational(0), Rational(-1)});
    Configuration a(1, 0);
    CHECK_THROWS_WITH_AS(sandwich_check(from_wolfram(184), signedq, a, {}),
                         doctest::Contains("nonnegative"), std::domain_error);
}

TEST_CASE("box averages of periodic configurations") {
    Quantity id = Quantity::identity(2);
    EventuallyPeriodic1D alt{{1, 0}, {}, {}};
    CHECK(cesaro_average(id, alt) == make_rational(1, 2));

    EventuallyPeriodic1D vac{{0}, {}, {}};
    CHECK(cesaro_average(id, vac) == 0);

    // finite tails never move the limit
    EventuallyPeriodic1D tailed{{1, 0}, {1, 1, 1}, {0, 0}};
    CHECK(cesaro_average(id, tailed) == make_rational(1, 2));
    CHECK(tailed.at(-2) == 1);
    CHECK(tailed.at(0) == 0);
    CHECK(tailed.at(2) == 1);  // back on the core

    TorusConfig t({6}, {1, 0, 1, 0, 1, 0});
    CHECK(cesaro_average(id, t) == make_rational(1, 2));
}

TEST_CASE("traffic preserves the density of the alternating lane") {
    Quantity id = Quantity::identity(2);
    TorusConfig t({6}, {1, 0, 1, 0, 1, 0});
    for (int k = 0; k < 10; ++k) {
        t = step(from_wolfram(184), t);
        CHECK(cesaro_average(id, t) == make_rational(1, 2));
    }
}

TEST_CASE("uniform-sum identity separates 184 from 110") {
    Quantity id = Quantity::identity(2);
    auto good = uniform_sum_check(from_wolfram(184), id);
    CHECK(good.holds);
    CHECK(good.table_side.rat[0] == 4);
    CHECK(good.symbol_side.rat[0] == 4);

    auto bad = uniform_sum_check(from_wolfram(110), id);
    CHECK_FALSE(bad.holds);
    CHECK(bad.table_side.rat[0] == 5);

    CHECK(uniform_sum_check(from_wolfram(110), Quantity::constant(2, Rational(0))).holds);
}

TEST_CASE("uniform-sum identity is implied by conservation") {
    std::mt19937 rng(127);
    for (int t = 0; t < 400; ++t) {
        int a = 2 + t % 2;
        LocalRule rule = random_rule(rng, a);
        Quantity phi = random_rational_quantity(rng, a);
        if (is_conserved(rule, phi).conserved) CHECK(uniform_sum_check(rule, phi).holds);
    }
}

TEST_CASE("consistent word measures have the de Bruijn cycle dimension") {
    RatMatrix basis = marginal_basis(2, 3);
    CHECK(basis.size() == 5);  // frozen from the exhaustive minor-rank oracle
    CHECK(marginal_basis(2, 1).size() == 2);
    CHECK(marginal_basis(3, 2).size() == 7);  // 9 - (3 - 1) consistency rank
}

TEST_CASE("marginal invariance agrees with the direct test") {
    Quantity id = Quantity::identity(2);
    auto rep184 = marginal_invariance_check(from_wolfram(184), id);
    CHECK(rep184.holds);
    CHECK(rep184.space_dimension == 5);
    CHECK_FALSE(marginal_invariance_check(from_wolfram(110), id).holds);

    for (int n = 0; n < 256; ++n) {
        bool direct = is_conserved(from_wolfram(n), id).conserved;
        CHECK(marginal_invariance_check(from_wolfram(n), id).holds == direct);
    }
}

TEST_CASE("marginal invariance on random rational valuations") {
    std::mt19937 rng(131);
    for (int t = 0; t < 120; ++t) {
        int a = 2 + t % 2;
        LocalRule rule = random_rule(rng, a);
        Quantity phi = random_rational_quantity(rng, a);
        CHECK(marginal_invariance_check(rule, phi).holds == is_conserved(rule, phi).conserved);
    }
}

TEST_CASE("enumeration cap respects the environment override") {
    CHECK(default_enumeration_cap() >= 1024);
}
