#pragma once

#include <cstdint>
#include <vector>

#include "calaw/conservation.hpp"
#include "calaw/quantity.hpp"
#include "calaw/rules.hpp"

namespace calaw {

struct SearchOptions {
    std::uint64_t cap = default_enumeration_cap();
    // Force the pruned assignment search even when a flat scan would fit.
    bool backtracking = false;
    // Parallel width: the table-prefix space is split into this many
    // contiguous ranges, merged back in prefix order, so the result is
    // independent of the worker count.
    int shards = 1;
};

// Every local rule on (alphabet, nbhd) that conserves phi, sorted by
// canonical table encoding. The flat scan runs a cheap uniform-sum prefilter
// before the full balance test; the backtracking mode assigns table entries
// in canonical order and prunes with every balance constraint whose entries
// are all assigned. Both modes return the same set.
std::vector<LocalRule> enumerate_conserving(const Alphabet& alphabet, const Neighborhood& nbhd,
                                            const Quantity& phi, const SearchOptions& opts = {});

struct PrefilterStats {
    std::uint64_t scanned = 0;
    std::uint64_t filter_pass = 0;
    std::uint64_t conserving = 0;
    // conserving rules rejected by the filter; soundness means zero
    std::uint64_t conserving_filter_fail = 0;
};

// How selective the uniform-sum necessary condition is against the full test
// over the whole rule space.
PrefilterStats prefilter_stats(const Alphabet& alphabet, const Neighborhood& nbhd,
                               const Quantity& phi,
                               std::uint64_t cap = default_enumeration_cap());

}  // namespace calaw
