#include "calaw/recode.hpp"

#include <stdexcept>

#include "calaw/linalg.hpp"

namespace calaw {

Quantity recode_nonnegative(const Quantity& phi) {
    if (phi.domain() == Domain::Mod)
        throw std::invalid_argument("residue quantities have no order to shift by");
    const int A = phi.alphabet();
    const int K = phi.components();
    RatVec mins(K);
    for (int k = 0; k < K; ++k) {
        mins[k] = phi.value(0)[k];
        for (Symbol s = 1; s < A; ++s) mins[k] = std::min(mins[k], phi.value(s)[k]);
    }
    std::vector<RatVec> shifted(A, RatVec(K));
    for (Symbol s = 0; s < A; ++s)
        for (int k = 0; k < K; ++k) shifted[s][k] = phi.value(s)[k] - mins[k];
    if (phi.domain() == Domain::Rational) {
        RatVec flat(A);
        for (Symbol s = 0; s < A; ++s) flat[s] = shifted[s][0];
        return Quantity::rational(A, std::move(flat));
    }
    return Quantity::vector_valued(A, K, std::move(shifted));
}

IntegerRecode recode_integer(const Quantity& phi) {
    if (phi.domain() == Domain::Mod)
        throw std::invalid_argument("residue quantities are already discrete");
    if (!phi.is_nonnegative())
        throw std::invalid_argument("integer recoding expects a nonnegative quantity");
    const int A = phi.alphabet();
    const int K = phi.components();

    // clear denominators jointly, then take the canonical lattice basis of
    // the integer generators
    BigInt lcm(1);
    for (Symbol s = 0; s < A; ++s)
        for (int k = 0; k < K; ++k) {
            BigInt den = phi.value(s)[k].get_den();
            BigInt g;
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
            lcm = lcm / g * den;
        }
    IntMatrix generators(A, IntVec(K));
    for (Symbol s = 0; s < A; ++s)
        for (int k = 0; k < K; ++k) {
            Rational scaled = phi.value(s)[k] * Rational(lcm);
            generators[s][k] = scaled.get_num();
        }
    IntMatrix basis = hnf(generators);
    const int rank = static_cast<int>(basis.size());

    std::vector<IntVec> coords(A);
    for (Symbol s = 0; s < A; ++s) {
        auto c = lattice_coordinates(basis, generators[s]);
        if (!c) throw std::logic_error("generator escaped its own lattice");
        coords[s] = std::move(*c);
    }
    // orient into the nonnegative orthant; a shift never disturbs
    // conserved-status
    for (int j = 0; j < rank; ++j) {
        BigInt lo = coords[0][j];
        for (Symbol s = 1; s < A; ++s) lo = std::min(lo, coords[s][j]);
        if (lo < 0)
            for (Symbol s = 0; s < A; ++s) coords[s][j] -= lo;
    }

    std::vector<RatVec> values(A, RatVec(rank));
    for (Symbol s = 0; s < A; ++s)
        for (int j = 0; j < rank; ++j) values[s][j] = Rational(coords[s][j]);
    return IntegerRecode{Quantity::vector_valued(A, rank, std::move(values)), rank};
}

}  // namespace calaw
