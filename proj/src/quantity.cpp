#include "calaw/quantity.hpp"

#include <stdexcept>

namespace calaw {

std::string domain_name(Domain d) {
    switch (d) {
        case Domain::Rational: return "rational";
        case Domain::RationalVector: return "vector";
        case Domain::Mod: return "mod";
    }
    return "?";
}

Quantity Quantity::rational(int alphabet, RatVec values) {
    if (alphabet < 1) throw std::invalid_argument("alphabet must be positive");
    if (static_cast<int>(values.size()) != alphabet)
        throw std::invalid_argument("quantity needs one value per symbol");
    Quantity q;
    q.domain_ = Domain::Rational;
    q.alphabet_ = alphabet;
    q.components_ = 1;
    q.values_.reserve(values.size());
    for (auto& v : values) q.values_.push_back({std::move(v)});
    return q;
}

Quantity Quantity::vector_valued(int alphabet, int components, std::vector<RatVec> values) {
    if (alphabet < 1) throw std::invalid_argument("alphabet must be positive");
    if (components < 0) throw std::invalid_argument("component count must be nonnegative");
    if (static_cast<int>(values.size()) != alphabet)
        throw std::invalid_argument("quantity needs one value per symbol");
    for (const auto& v : values)
        if (static_cast<int>(v.size()) != components)
            throw std::invalid_argument("vector value has wrong length");
    Quantity q;
    q.domain_ = Domain::RationalVector;
    q.alphabet_ = alphabet;
    q.components_ = components;
    q.values_ = std::move(values);
    return q;
}

Quantity Quantity::mod(int alphabet, std::int64_t modulus, std::vector<std::int64_t> residues) {
    if (alphabet < 1) throw std::invalid_argument("alphabet must be positive");
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    if (static_cast<int>(residues.size()) != alphabet)
        throw std::invalid_argument("quantity needs one value per symbol");
    Quantity q;
    q.domain_ = Domain::Mod;
    q.alphabet_ = alphabet;
    q.modulus_ = modulus;
    q.residues_.reserve(residues.size());
    for (std::int64_t r : residues) {
        r %= modulus;
        if (r < 0) r += modulus;
        q.residues_.push_back(r);
    }
    return q;
}

Quantity Quantity::identity(int alphabet) {
    RatVec v(alphabet);
    for (int s = 0; s < alphabet; ++s) v[s] = s;
    return rational(alphabet, std::move(v));
}

Quantity Quantity::constant(int alphabet, const Rational& c) {
    return rational(alphabet, RatVec(alphabet, c));
}

const RatVec& Quantity::value(Symbol s) const {
    if (domain_ == Domain::Mod) throw std::logic_error("mod quantity has no rational value");
    return values_.at(s);
}

const Rational& Quantity::scalar(Symbol s) const {
    if (domain_ != Domain::Rational)
        throw std::logic_error("scalar value requested from non-scalar quantity");
    return values_.at(s)[0];
}

std::int64_t Quantity::residue(Symbol s) const {
    if (domain_ != Domain::Mod) throw std::logic_error("residue requested from rational quantity");
    return residues_.at(s);
}

bool Quantity::is_vacuum(Symbol s) const {
    if (domain_ == Domain::Mod) return residues_.at(s) == 0;
    return is_zero(values_.at(s));
}

std::vector<Symbol> Quantity::vacuum_set() const {
    std::vector<Symbol> out;
    for (Symbol s = 0; s < alphabet_; ++s)
        if (is_vacuum(s)) out.push_back(s);
    return out;
}

std::optional<Symbol> Quantity::designated_vacuum() const {
    for (Symbol s = 0; s < alphabet_; ++s)
        if (is_vacuum(s)) return s;
    return std::nullopt;
}

bool Quantity::is_nonnegative() const {
    if (domain_ == Domain::Mod) return true;
    for (const auto& row : values_)
        for (const auto& x : row)
            if (x < 0) return false;
    return true;
}

bool Quantity::is_natural() const {
    if (domain_ != Domain::Rational) return false;
    for (const auto& row : values_)
        if (row[0] < 0 || !is_integer(row[0])) return false;
    return true;
}

bool TotalValue::is_zero() const {
    if (domain == Domain::Mod) return residue == 0;
    return calaw::is_zero(rat);
}

std::string TotalValue::str() const {
    if (domain == Domain::Mod) return std::to_string(residue) + " mod " + std::to_string(modulus);
    if (rat.size() == 1) return to_string(rat[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < rat.size(); ++i) {
        if (i) s += ",";
        s += to_string(rat[i]);
    }
    return s + ")";
}

TotalValue zero_total(const Quantity& phi) {
    TotalValue t;
    t.domain = phi.domain();
    if (phi.domain() == Domain::Mod) {
        t.modulus = phi.modulus();
    } else {
        t.rat.assign(phi.components(), Rational(0));
    }
    return t;
}

void accumulate(TotalValue& t, const Quantity& phi, Symbol s) {
    if (phi.domain() == Domain::Mod) {
        t.residue = (t.residue + phi.residue(s)) % phi.modulus();
    } else {
        const RatVec& v = phi.value(s);
        for (std::size_t i = 0; i < t.rat.size(); ++i) t.rat[i] += v[i];
    }
}

TotalValue total(const Quantity& phi, const Configuration& a) {
    if (!phi.is_vacuum(a.background()))
        throw std::domain_error("divergent total: background symbol is not vacuum");
    TotalValue t = zero_total(phi);
    for (const auto& [p, s] : a.overrides()) accumulate(t, phi, s);
    return t;
}

TotalValue total(const Quantity& phi, const TorusConfig& a) {
    TotalValue t = zero_total(phi);
    for (Symbol s : a.cells()) accumulate(t, phi, s);
    return t;
}

TotalValue total_window(const Quantity& phi, const Configuration& a, const Window& w) {
    TotalValue t = zero_total(phi);
    for (const auto& p : w) accumulate(t, phi, a.at(p));
    return t;
}

TotalValue total_window(const Quantity& phi, const TorusConfig& a, const Window& w) {
    TotalValue t = zero_total(phi);
    for (const auto& p : w) accumulate(t, phi, a.at(p));
    return t;
}

}  // namespace calaw
