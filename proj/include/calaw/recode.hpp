#pragma once

#include "calaw/quantity.hpp"

namespace calaw {

// Componentwise shift by the minimum value: the result is nonnegative with a
// zero in every component, and shares conserved-status with the input for
// every rule (the balance identity only sees differences).
Quantity recode_nonnegative(const Quantity& phi);

struct IntegerRecode {
    // Particle-count form: integer coordinates in a canonical basis of the
    // subgroup of Q^K generated by the input values, shifted componentwise
    // into the nonnegative orthant.
    Quantity counts;
    int lattice_rank = 0;
};

// Input must be nonnegative rational (scalar or vector); apply
// recode_nonnegative first. Scalar inputs reduce to division by the gcd of
// the values.
IntegerRecode recode_integer(const Quantity& phi);

}  // namespace calaw
