#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calaw/engine.hpp"
#include "calaw/lattice.hpp"
#include "calaw/linalg.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

namespace calaw {

// Global cap on exhaustive enumerations (rule-space scans, torus sweeps).
// Overridable through the CA_CONSERVE_CAP environment variable.
std::uint64_t default_enumeration_cap();

// Outcome of the single-site perturbation test: the quantity is conserved
// iff flipping the origin of any doubled-neighborhood pattern changes the
// updated patch total by exactly the value difference at the origin.
struct ConservationCheck {
    bool conserved = true;
    // When the quantity has no vacuum symbol, finite-support totals are
    // vacuous and the perturbation identity itself is the adopted notion.
    bool empty_vacuum = false;

    // Violating pattern pair over the doubled neighborhood (canonical
    // order), differing only at the origin.
    std::vector<Symbol> pattern_low, pattern_high;
    // Finite-support witness whose total moves under one step, when a
    // quiescent vacuum background exists.
    std::optional<Configuration> witness;
    TotalValue witness_before, witness_after;
};

ConservationCheck is_conserved(const LocalRule& rule, const Quantity& phi);

// Exact basis of all conserved valuations, as a linear space over Q or as a
// module over Z/m. Constant valuations always lie in the span.
struct ConservationBasis {
    Domain domain = Domain::Rational;
    std::int64_t modulus = 0;
    int alphabet = 0;
    RatMatrix rational_basis;  // RREF rows, first nonzero entry 1
    IntMatrix mod_basis;       // canonical HNF generators, entries in [0, m)
    std::vector<bool> trivial; // per row: constant vector

    int dimension() const {
        return static_cast<int>(domain == Domain::Mod ? mod_basis.size()
                                                      : rational_basis.size());
    }
};

ConservationBasis conserved_basis(const LocalRule& rule);
ConservationBasis conserved_basis_mod(const LocalRule& rule, std::int64_t modulus);

// Whether phi lies in the span (Q) / generated module (Z/m) of a basis.
bool basis_contains(const ConservationBasis& basis, const Quantity& phi);

// Direct check on one finite quotient: is the total invariant under a step
// for every (or n sampled) torus configuration?
struct TorusCheckResult {
    bool conserved = true;
    std::optional<TorusConfig> counterexample;
};

TorusCheckResult conserved_on_torus_exhaustive(const LocalRule& rule, const Quantity& phi,
                                               const std::vector<int>& moduli,
                                               std::uint64_t cap = default_enumeration_cap());
TorusCheckResult conserved_on_torus_sampled(const LocalRule& rule, const Quantity& phi,
                                            const std::vector<int>& moduli, std::uint64_t n,
                                            std::uint64_t seed);

// Windowed-total bounds for one step of the rule: interior total of the
// input <= window total of the image <= closure total of the input. For
// nonnegative quantities this holds for every window iff phi is conserved.
struct SandwichReport {
    TotalValue interior_total;
    TotalValue image_total;
    TotalValue closure_total;
    bool lower_ok = false;
    bool upper_ok = false;
    bool holds() const { return lower_ok && upper_ok; }
};

SandwichReport sandwich_check(const LocalRule& rule, const Quantity& phi,
                              const Configuration& a, const Window& w);
SandwichReport sandwich_check(const LocalRule& rule, const Quantity& phi,
                              const TorusConfig& a, const Window& w);

// One-dimensional configuration that is periodic away from the origin: the
// core repeats everywhere except finite tail words straddling position 0.
// Box averages over [0..n] converge exactly to the core mean.
struct EventuallyPeriodic1D {
    std::vector<Symbol> core;        // nonempty period
    std::vector<Symbol> left_tail;   // occupies [-len .. -1]
    std::vector<Symbol> right_tail;  // occupies [0 .. len-1]

    Symbol at(long i) const;
};

Rational cesaro_average(const Quantity& phi, const EventuallyPeriodic1D& a);
Rational cesaro_average(const Quantity& phi, const TorusConfig& a);

// Necessary condition from the uniform product measure: the table outputs
// must average to the alphabet average of phi.
struct UniformSumReport {
    bool holds = false;
    TotalValue table_side;   // sum of phi over all table outputs
    TotalValue symbol_side;  // A^{|B|-1} * sum of phi over the alphabet
};

UniformSumReport uniform_sum_check(const LocalRule& rule, const Quantity& phi);

// Basis of the signed word measures (length word_len over the alphabet)
// whose left and right length-(word_len-1) marginals agree. These are
// exactly the window marginals of shift-invariant signed measures.
RatMatrix marginal_basis(int alphabet, int word_len);

// One-dimensional invariance test: phi is conserved iff the per-word update
// increment pairs to zero against every consistent signed word measure.
struct MarginalReport {
    bool holds = false;
    int space_dimension = 0;
};

MarginalReport marginal_invariance_check(const LocalRule& rule, const Quantity& phi);

}  // namespace calaw
