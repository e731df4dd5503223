#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "calaw/rational.hpp"

namespace calaw {

using RatMatrix = std::vector<RatVec>;
using IntVec = std::vector<BigInt>;
using IntMatrix = std::vector<IntVec>;

// In-place reduced row echelon form, first nonzero entry of every row = 1.
// Returns the rank; zero rows are removed.
int rref(RatMatrix& m);

int rank(RatMatrix m);

// Canonical basis (RREF rows) of {x : m x = 0} with x of length ncols.
RatMatrix nullspace(const RatMatrix& m, int ncols);

// Whether v lies in the row span of basis (rational span membership).
bool in_row_span(const RatMatrix& basis, const RatVec& v);

// Row Hermite normal form: echelon, positive pivots, entries above each
// pivot reduced into [0, pivot). Zero rows are dropped. Canonical for the
// row lattice.
IntMatrix hnf(IntMatrix a);

// Same, also returning a unimodular T with T * input = [H; zero rows].
// H keeps its zero rows here so T rows line up.
std::pair<IntMatrix, IntMatrix> hnf_with_transform(IntMatrix a);

// Lattice basis of {x in Z^ncols : m x = 0}, rows in HNF.
IntMatrix integer_kernel(const IntMatrix& m, int ncols);

// Canonical generating set of {x in (Z/mod)^ncols : m x = 0 (mod mod)},
// entries reduced into [0, mod); trivial generators (multiples of mod)
// are dropped.
IntMatrix mod_solution_generators(const IntMatrix& m, int ncols, std::int64_t mod);

// Integer coordinates of v in the row-HNF lattice basis, if v lies in the
// lattice.
std::optional<IntVec> lattice_coordinates(const IntMatrix& hnf_basis, const IntVec& v);

}  // namespace calaw
