#include <doctest.h>

#include <random>
#include <set>

#include "calaw/linalg.hpp"

using namespace calaw;

namespace {

RatVec rv(std::initializer_list<long> xs) {
    RatVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

IntVec iv(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("rref normalizes pivots and clears columns") {
    RatMatrix m{rv({2, 4}), rv({1, 2}), rv({0, 3})};
    CHECK(rref(m) == 2);
    CHECK(m[0] == rv({1, 0}));
    CHECK(m[1] == rv({0, 1}));
}

TEST_CASE("nullspace of a single relation") {
    RatMatrix basis = nullspace({rv({1, 1})}, 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0] == rv({1, -1}));
    CHECK(in_row_span(basis, rv({2, -2})));
    CHECK_FALSE(in_row_span(basis, rv({1, 1})));
}

TEST_CASE("nullspace of nothing is everything") {
    RatMatrix basis = nullspace({}, 3);
    CHECK(basis.size() == 3);
    CHECK(rank(basis) == 3);
}

TEST_CASE("nullspace vectors satisfy the system") {
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int t = 0; t < 200; ++t) {
        int rows = 1 + t % 4, cols = 2 + t % 5;
        RatMatrix m(rows, RatVec(cols));
        for (auto& r : m)
            for (auto& x : r) x = entry(rng);
        RatMatrix basis = nullspace(m, cols);
        CHECK(static_cast<int>(basis.size()) == cols - rank(m));
        for (const auto& v : basis) {
            for (const auto& row : m) {
                Rational dot(0);
                for (int j = 0; j < cols; ++j) dot += row[j] * v[j];
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("hnf of a plane lattice") {
    IntMatrix h = hnf({iv({2, 0}), iv({1, 1})});
    REQUIRE(h.size() == 2);
    CHECK(h[0] == iv({1, 1}));
    CHECK(h[1] == iv({0, 2}));

    auto c = lattice_coordinates(h, iv({2, 0}));
    REQUIRE(c.has_value());
    CHECK((*c)[0] == 2);
    CHECK((*c)[1] == -1);
    CHECK_FALSE(lattice_coordinates(h, iv({1, 0})).has_value());
}

TEST_CASE("hnf is canonical under row scrambling") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> entry(-6, 6);
    for (int t = 0; t < 100; ++t) {
        int rows = 2 + t % 3, cols = 2 + t % 3;
        IntMatrix m(rows, IntVec(cols));
        for (auto& r : m)
            for (auto& x : r) x = entry(rng);
        IntMatrix h1 = hnf(m);
        std::shuffle(m.begin(), m.end(), rng);
        // adding a row that is a combination of others keeps the lattice
        if (!m.empty()) {
            IntVec extra(cols, 0);
            for (std::size_t j = 0; j < m.size(); ++j)
                for (int k = 0; k < cols; ++k) extra[k] += m[j][k];
            m.push_back(extra);
        }
        CHECK(hnf(m) == h1);
    }
}

TEST_CASE("integer kernel members annihilate the matrix") {
    IntMatrix m{iv({1, 1, 1})};
    IntMatrix k = integer_kernel(m, 3);
    REQUIRE(k.size() == 2);
    for (const auto& v : k) {
        BigInt dot = v[0] + v[1] + v[2];
        CHECK(dot == 0);
    }
    // (1,-1,0) and (0,1,-1) span it; check membership
    CHECK(lattice_coordinates(k, iv({1, -1, 0})).has_value());
    CHECK(lattice_coordinates(k, iv({0, 1, -1})).has_value());
    CHECK_FALSE(lattice_coordinates(k, iv({1, 0, 0})).has_value());
}

TEST_CASE("mod solutions match brute force enumeration") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int t = 0; t < 150; ++t) {
        const int n = 2 + t % 2;               // unknowns
        const std::int64_t mod = 2 + t % 5;    // 2..6, includes composites
        const int rows = 1 + t % 3;
        IntMatrix m(rows, IntVec(n));
        for (auto& r : m)
            for (auto& x : r) x = entry(rng);

        IntMatrix gens = mod_solution_generators(m, n, mod);

        // brute force the solution set
        std::set<std::vector<std::int64_t>> expect;
        std::vector<std::int64_t> x(n, 0);
        while (true) {
            bool ok = true;
            for (const auto& row : m) {
                BigInt acc(0);
                for (int j = 0; j < n; ++j) acc += row[j] * static_cast<long>(x[j]);
                if (acc % static_cast<long>(mod) != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) expect.insert(x);
            int i = n - 1;
            while (i >= 0 && x[i] == mod - 1) x[i--] = 0;
            if (i < 0) break;
            ++x[i];
        }

        // span the generators over Z/mod
        std::set<std::vector<std::int64_t>> got;
        std::vector<std::int64_t> combo(gens.size(), 0);
        while (true) {
            std::vector<std::int64_t> v(n, 0);
            for (std::size_t g = 0; g < gens.size(); ++g)
                for (int j = 0; j < n; ++j)
                    v[j] = (v[j] + combo[g] * to_int64(gens[g][j])) % mod;
            got.insert(v);
            int i = static_cast<int>(combo.size()) - 1;
            while (i >= 0 && combo[i] == mod - 1) combo[i--] = 0;
            if (i < 0) break;
            ++combo[i];
        }
        CHECK(got == expect);
    }
}
