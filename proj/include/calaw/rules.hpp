#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calaw/lattice.hpp"

namespace calaw {

struct Alphabet {
    int size = 0;
    std::vector<std::string> names;  // optional; distinct when present

    explicit Alphabet(int size_, std::vector<std::string> names_ = {});
    bool operator==(const Alphabet&) const = default;
};

// Patterns over an offset list are encoded mixed-radix: digit order is the
// canonical (lexicographic) offset order, most significant first. Every
// consumer of table indices (solver, search, files) shares this encoding.
std::uint64_t encode_pattern(const std::vector<Symbol>& pattern, int alphabet_size);
std::vector<Symbol> decode_pattern(std::uint64_t code, int alphabet_size, int length);

// Local update table f: A^B -> A, dense over the canonical pattern encoding.
class LocalRule {
  public:
    LocalRule(Alphabet alphabet, Neighborhood nbhd, std::vector<Symbol> table,
              std::optional<std::string> name = std::nullopt);

    const Alphabet& alphabet() const { return alphabet_; }
    const Neighborhood& nbhd() const { return nbhd_; }
    const std::vector<Symbol>& table() const { return table_; }
    const std::optional<std::string>& name() const { return name_; }
    int dimension() const { return nbhd_.dimension(); }

    Symbol apply_local(const std::vector<Symbol>& pattern) const;
    Symbol apply_encoded(std::uint64_t code) const { return table_[code]; }

    // One synchronous update of a patch: input over nbhd().doubled(), output
    // over nbhd(), both in canonical offset order.
    std::vector<Symbol> apply_patch(const std::vector<Symbol>& doubled_pattern) const;

    bool operator==(const LocalRule& o) const {
        return alphabet_ == o.alphabet_ && nbhd_ == o.nbhd_ && table_ == o.table_;
    }

  private:
    Alphabet alphabet_;
    Neighborhood nbhd_;
    std::vector<Symbol> table_;
    std::optional<std::string> name_;
};

// Table size A^{|B|} as checked arithmetic; throws if it exceeds limit.
std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp,
                            std::uint64_t limit = UINT64_MAX);

// Advances a pattern through canonical code order; returns false after the
// last one (all digits at alphabet_size-1).
bool next_pattern_mixed_radix(std::vector<Symbol>& pattern, int alphabet_size);

// Elementary rules: A={0,1}, B={-1,0,1}, output for (a_-1,a_0,a_1) is bit
// 4a_-1 + 2a_0 + a_1 of the rule number.
LocalRule from_wolfram(int number);
std::optional<int> to_wolfram(const LocalRule& rule);

// For each output position v in B, the positions inside the doubled-window
// pattern that form the translated lookup window v+B. Shared by the patch
// step, the solver and the displacement machinery.
std::vector<std::vector<int>> patch_index_map(const Neighborhood& nbhd);

}  // namespace calaw
