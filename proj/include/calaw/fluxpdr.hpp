#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "calaw/conservation.hpp"
#include "calaw/lattice.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

namespace calaw {

// Directed particle flow at one site: right crosses the edge (z, z+1), left
// crosses (z, z-1) and equals minus the right flux one edge over, out is
// their sum (the net flow out of the site).
struct FluxValue {
    std::int64_t right = 0;
    std::int64_t left = 0;
    std::int64_t out = 0;
};

// Flux evaluation for a 1-D rule with interval neighborhood [-B..B] and a
// conserved natural-valued quantity. The right flux across an edge is a
// function of the radius-B word around it alone, so values are computed once
// per word and cached.
class FluxAnalyzer {
  public:
    FluxAnalyzer(const LocalRule& rule, const Quantity& phi);

    const LocalRule& rule() const { return rule_; }
    const Quantity& phi() const { return phi_; }
    int radius() const { return radius_; }
    std::int64_t phi_of(Symbol s) const { return phi_int_[s]; }

    // word = a|[z-B .. z+B]; returns the net rightward flow across (z, z+1)
    std::int64_t right_flux_word(const std::vector<Symbol>& word) const;
    std::int64_t right_flux(const Configuration& a, long z) const;
    std::int64_t right_flux(const TorusConfig& a, long z) const;

    FluxValue flux_at(const Configuration& a, long z) const;
    FluxValue flux_at(const TorusConfig& a, long z) const;

  private:
    friend class DisplacementRule;
    std::int64_t flux_of_code(std::uint64_t code) const;
    std::int64_t compute_flux(const std::vector<Symbol>& word) const;
    template <typename Cfg>
    std::vector<Symbol> word_at(const Cfg& a, long z) const;

    LocalRule rule_;
    Quantity phi_;
    std::vector<std::int64_t> phi_int_;
    int radius_;
    Symbol vacuum_;
    mutable std::vector<std::int64_t> cache_;
    mutable std::vector<char> cached_;
};

// Per-site identities and bounds the flux must satisfy at site z.
struct FluxIdentityReport {
    FluxValue flux;
    std::int64_t site_change = 0;  // phi(a'_z) - phi(a_z)
    bool out_balances = false;     // out == -site_change
    bool bound_right_by_input = false;   // right <= sum phi(a) on [z-B..z]
    bool bound_right_by_image = false;   // right <= sum phi(a') on [z..z+B]
    bool bound_left_by_input = false;    // left  <= sum phi(a) on [z..z+B]
    bool bound_left_by_image = false;    // left  <= sum phi(a') on [z-B..z]
    bool all_ok() const {
        return out_balances && bound_right_by_input && bound_right_by_image &&
               bound_left_by_input && bound_left_by_image;
    }
};

FluxIdentityReport flux_identities_check(const FluxAnalyzer& fa, const Configuration& a, long z);
FluxIdentityReport flux_identities_check(const FluxAnalyzer& fa, const TorusConfig& a, long z);

// Table assigning each particle at the origin a destination offset in
// [-B..B], keyed by the pattern over the doubled window [-2B..2B].
class DisplacementRule {
  public:
    DisplacementRule(int alphabet, int radius,
                     std::vector<std::vector<std::int64_t>> counts);

    int alphabet() const { return alphabet_; }
    int radius() const { return radius_; }
    int pattern_length() const { return 4 * radius_ + 1; }
    std::size_t pattern_count() const { return counts_.size(); }

    // d_{0 -> offset} for the doubled-window pattern with this code
    std::int64_t count(std::uint64_t code, int offset) const;
    const std::vector<std::int64_t>& counts(std::uint64_t code) const { return counts_[code]; }
    std::vector<std::vector<std::int64_t>>& mutable_counts() { return counts_; }

  private:
    int alphabet_;
    int radius_;
    // counts_[code][offset + radius]
    std::vector<std::vector<std::int64_t>> counts_;
};

// Splits each site's outgoing mass across destination capacities, nearest
// first, with through-traffic ahead of locally emitted particles. The result
// pays out exactly phi at every site.
DisplacementRule build_displacement_rule(const LocalRule& rule, const Quantity& phi);

struct PdrVerifyReport {
    std::uint64_t outflow_checked = 0;    // per-pattern payout identity
    std::uint64_t outflow_violations = 0;
    std::uint64_t inflow_checked = 0;     // per-site arrival identity
    std::uint64_t inflow_violations = 0;
    std::uint64_t ledger_checked = 0;     // global totals per configuration
    std::uint64_t ledger_violations = 0;
    std::optional<std::uint64_t> first_bad_pattern;
    bool ok() const {
        return outflow_violations == 0 && inflow_violations == 0 && ledger_violations == 0;
    }
};

// Outflow is checked exhaustively over every doubled-window pattern; arrival
// and global ledgers on random finite-support configurations.
PdrVerifyReport verify_displacement_rule(const LocalRule& rule, const Quantity& phi,
                                         const DisplacementRule& d, std::uint64_t trials,
                                         std::uint64_t seed);

struct Reconstruction {
    std::vector<LocalRule> rules;
    int radius = 0;   // neighborhood the arrival count actually depends on
    bool unique = false;
};

// Rebuilds every local rule compatible with the displacement table: the new
// symbol at a site is any symbol whose phi-value equals the arrival count.
// The neighborhood is narrowed as far as the arrival count allows.
Reconstruction reconstruct_rule(const Quantity& phi, const DisplacementRule& d,
                                std::uint64_t cap = default_enumeration_cap());

}  // namespace calaw
