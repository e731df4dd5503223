#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "calaw/lattice.hpp"
#include "calaw/rational.hpp"

namespace calaw {

enum class Domain { Rational, RationalVector, Mod };

std::string domain_name(Domain d);

// Cell-wise valuation phi with an exact coefficient domain: one value per
// symbol, either K rationals or a residue mod m. The vacuum set is the
// preimage of the domain identity.
class Quantity {
  public:
    static Quantity rational(int alphabet, RatVec values);
    static Quantity vector_valued(int alphabet, int components, std::vector<RatVec> values);
    static Quantity mod(int alphabet, std::int64_t modulus, std::vector<std::int64_t> residues);
    // phi(a) = a over the rationals.
    static Quantity identity(int alphabet);
    static Quantity constant(int alphabet, const Rational& c);

    Domain domain() const { return domain_; }
    int alphabet() const { return alphabet_; }
    int components() const { return components_; }
    std::int64_t modulus() const { return modulus_; }

    // Rational domains only; length = components().
    const RatVec& value(Symbol s) const;
    const Rational& scalar(Symbol s) const;
    std::int64_t residue(Symbol s) const;

    bool is_vacuum(Symbol s) const;
    std::vector<Symbol> vacuum_set() const;
    // Smallest-index vacuum symbol, used whenever a finite pattern has to be
    // planted into an infinite background.
    std::optional<Symbol> designated_vacuum() const;

    bool is_nonnegative() const;  // rational domains; true for Mod
    bool is_natural() const;      // nonnegative integers, scalar

    bool operator==(const Quantity&) const = default;

  private:
    Quantity() = default;
    Domain domain_ = Domain::Rational;
    int alphabet_ = 0;
    int components_ = 1;
    std::int64_t modulus_ = 0;
    std::vector<RatVec> values_;          // rational domains, per symbol
    std::vector<std::int64_t> residues_;  // mod domain, reduced into [0, m)
};

// Running total in the domain of one quantity.
struct TotalValue {
    Domain domain = Domain::Rational;
    RatVec rat;                 // rational domains
    std::int64_t residue = 0;   // mod domain
    std::int64_t modulus = 0;

    bool operator==(const TotalValue&) const = default;
    bool is_zero() const;
    std::string str() const;
};

TotalValue zero_total(const Quantity& phi);
void accumulate(TotalValue& t, const Quantity& phi, Symbol s);

// Sum of phi over the whole configuration; requires a vacuum background,
// otherwise the sum diverges.
TotalValue total(const Quantity& phi, const Configuration& a);
TotalValue total(const Quantity& phi, const TorusConfig& a);

TotalValue total_window(const Quantity& phi, const Configuration& a, const Window& w);
TotalValue total_window(const Quantity& phi, const TorusConfig& a, const Window& w);

}  // namespace calaw
