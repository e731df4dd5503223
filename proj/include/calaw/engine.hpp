#pragma once

#include "calaw/lattice.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

namespace calaw {

// True iff every all-vacuum neighborhood pattern maps back into the vacuum
// set; exhaustive over |vacuum|^{|B|} patterns. Necessary for conservation,
// never sufficient.
bool is_vacuum_preserving(const LocalRule& rule, const Quantity& phi);

// One synchronous update of a sparse configuration. The background must be a
// fixed point of the rule; new overrides stay within one neighborhood of the
// old support.
Configuration step(const LocalRule& rule, const Configuration& a);

// One synchronous update with wrap-around; moduli must embed the doubled
// neighborhood.
TorusConfig step(const LocalRule& rule, const TorusConfig& a);

// Plants a finite pattern (canonical window order) into the designated
// vacuum background of phi.
Configuration embed(const std::vector<Symbol>& pattern, const Window& w,
                    const Quantity& phi, int dimension);

}  // namespace calaw
