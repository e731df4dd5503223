#include "calaw/conservation.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>
#include <stdexcept>

namespace calaw {

namespace {

TotalValue sub(const TotalValue& x, const TotalValue& y) {
    TotalValue r = x;
    if (r.domain == Domain::Mod) {
        r.residue = (r.residue - y.residue) % r.modulus;
        if (r.residue < 0) r.residue += r.modulus;
    } else {
        for (std::size_t i = 0; i < r.rat.size(); ++i) r.rat[i] -= y.rat[i];
    }
    return r;
}

TotalValue value_of(const Quantity& phi, Symbol s) {
    TotalValue t = zero_total(phi);
    accumulate(t, phi, s);
    return t;
}

bool leq(const TotalValue& x, const TotalValue& y) {
    for (std::size_t i = 0; i < x.rat.size(); ++i)
        if (!(x.rat[i] <= y.rat[i])) return false;
    return true;
}

// Quiescent vacuum backgrounds are the only ones a sparse step can use.
std::optional<Symbol> quiescent_vacuum(const LocalRule& rule, const Quantity& phi) {
    std::vector<Symbol> window(rule.nbhd().size());
    for (Symbol v : phi.vacuum_set()) {
        std::fill(window.begin(), window.end(), v);
        if (rule.apply_local(window) == v) return v;
    }
    return std::nullopt;
}

void derive_witness(const LocalRule& rule, const Quantity& phi, ConservationCheck& out) {
    auto bg = quiescent_vacuum(rule, phi);
    if (!bg) return;
    Window sites;
    const Neighborhood doubled = rule.nbhd().doubled();
    for (const auto& p : doubled.offsets()) sites.insert(p);
    for (const auto* pat : {&out.pattern_low, &out.pattern_high}) {
        Configuration a(rule.dimension(), *bg);
        std::size_t i = 0;
        for (const auto& p : sites) a.set(p, (*pat)[i++]);
        TotalValue before = total(phi, a);
        TotalValue after = total(phi, step(rule, a));
        if (!(before == after)) {
            out.witness = a;
            out.witness_before = before;
            out.witness_after = after;
            return;
        }
    }
}

Window reduce_window(const Window& w, const TorusConfig& t) {
    Window out;
    for (const auto& p : w) out.insert(t.point_at(t.index_of(p)));
    return out;
}

void require_sandwich_quantity(const Quantity& phi) {
    if (phi.domain() == Domain::Mod || !phi.is_nonnegative())
        throw std::domain_error("requires nonnegative quantity");
}

TotalValue scale(const TotalValue& t, const BigInt& factor, std::int64_t modulus) {
    TotalValue r = t;
    if (r.domain == Domain::Mod) {
        BigInt f = factor % BigInt(static_cast<long>(modulus));
        r.residue = (to_int64(f) * r.residue) % modulus;
        if (r.residue < 0) r.residue += modulus;
    } else {
        Rational f(factor);
        for (auto& x : r.rat) x *= f;
    }
    return r;
}

}  // namespace

std::uint64_t default_enumeration_cap() {
    if (const char* env = std::getenv("CA_CONSERVE_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ull << 20;
}

namespace {

// Machine-integer hot path for scalar integer quantities; the wide windows
// of large-radius rules make the exact-bignum loop needlessly slow there.
std::optional<std::vector<std::int64_t>> small_integer_values(const Quantity& phi,
                                                              int window_count) {
    if (phi.domain() != Domain::Rational) return std::nullopt;
    const std::int64_t limit = (1ll << 56) / (window_count + 1);
    std::vector<std::int64_t> vals(phi.alphabet());
    for (Symbol s = 0; s < phi.alphabet(); ++s) {
        const Rational& v = phi.scalar(s);
        if (!is_integer(v) || !v.get_num().fits_slong_p()) return std::nullopt;
        vals[s] = v.get_num().get_si();
        if (vals[s] > limit || vals[s] < -limit) return std::nullopt;
    }
    return vals;
}

}  // namespace

ConservationCheck is_conserved(const LocalRule& rule, const Quantity& phi) {
    if (phi.alphabet() != rule.alphabet().size)
        throw std::invalid_argument("quantity alphabet does not match rule");
    const int A = rule.alphabet().size;
    const Neighborhood dbl = rule.nbhd().doubled();
    const int L = dbl.size();
    const int origin = dbl.index_of(Point(rule.dimension(), 0));
    const auto windows = patch_index_map(rule.nbhd());

    ConservationCheck out;
    out.empty_vacuum = phi.vacuum_set().empty();

    std::vector<Symbol> pat(L, 0);
    std::vector<Symbol> base(L - 1, 0);
    std::vector<Symbol> window(rule.nbhd().size());

    auto report_violation = [&](Symbol a, Symbol c) {
        out.conserved = false;
        pat[origin] = a;
        out.pattern_low = pat;
        pat[origin] = c;
        out.pattern_high = pat;
        derive_witness(rule, phi, out);
    };

    if (auto vals = small_integer_values(phi, static_cast<int>(windows.size()))) {
        std::vector<std::int64_t> patch_total(A);
        while (true) {
            for (int i = 0, j = 0; i < L; ++i)
                if (i != origin) pat[i] = base[j++];
            for (Symbol s = 0; s < A; ++s) {
                pat[origin] = s;
                std::int64_t t = 0;
                for (const auto& row : windows) {
                    for (std::size_t k = 0; k < row.size(); ++k) window[k] = pat[row[k]];
                    t += (*vals)[rule.apply_local(window)];
                }
                patch_total[s] = t;
            }
            for (Symbol a = 0; a < A; ++a)
                for (Symbol c = a + 1; c < A; ++c)
                    if (patch_total[c] - patch_total[a] != (*vals)[c] - (*vals)[a]) {
                        report_violation(a, c);
                        return out;
                    }
            if (!next_pattern_mixed_radix(base, A)) break;
        }
        return out;
    }

    std::vector<TotalValue> patch_total(A);
    while (true) {
        for (int i = 0, j = 0; i < L; ++i)
            if (i != origin) pat[i] = base[j++];
        for (Symbol s = 0; s < A; ++s) {
            pat[origin] = s;
            TotalValue t = zero_total(phi);
            for (const auto& row : windows) {
                for (std::size_t k = 0; k < row.size(); ++k) window[k] = pat[row[k]];
                accumulate(t, phi, rule.apply_local(window));
            }
            patch_total[s] = std::move(t);
        }
        for (Symbol a = 0; a < A; ++a) {
            for (Symbol c = a + 1; c < A; ++c) {
                TotalValue lhs = sub(patch_total[c], patch_total[a]);
                TotalValue rhs = sub(value_of(phi, c), value_of(phi, a));
                if (!(lhs == rhs)) {
                    report_violation(a, c);
                    return out;
                }
            }
        }
        if (!next_pattern_mixed_radix(base, A)) break;
    }
    return out;
}

namespace {

// Linear constraint rows over the per-symbol unknowns, one row per
// origin-differing pattern pair, deduplicated.
std::set<std::vector<long>> balance_rows(const LocalRule& rule) {
    const int A = rule.alphabet().size;
    const Neighborhood dbl = rule.nbhd().doubled();
    const int L = dbl.size();
    const int origin = dbl.index_of(Point(rule.dimension(), 0));
    const auto windows = patch_index_map(rule.nbhd());

    std::set<std::vector<long>> rows;
    std::vector<Symbol> pat(L, 0);
    std::vector<Symbol> base(L - 1, 0);
    std::vector<Symbol> win(rule.nbhd().size());
    std::vector<std::vector<long>> out_counts(A, std::vector<long>(A, 0));
    while (true) {
        for (int i = 0, j = 0; i < L; ++i)
            if (i != origin) pat[i] = base[j++];
        for (Symbol s = 0; s < A; ++s) {
            pat[origin] = s;
            std::fill(out_counts[s].begin(), out_counts[s].end(), 0);
            for (const auto& row : windows) {
                for (std::size_t k = 0; k < row.size(); ++k) win[k] = pat[row[k]];
                ++out_counts[s][rule.apply_local(win)];
            }
        }
        for (Symbol a = 0; a < A; ++a) {
            for (Symbol c = a + 1; c < A; ++c) {
                std::vector<long> row(A, 0);
                for (Symbol s = 0; s < A; ++s) row[s] = out_counts[c][s] - out_counts[a][s];
                row[c] -= 1;
                row[a] += 1;
                bool nonzero = false;
                for (long x : row)
                    if (x != 0) nonzero = true;
                if (nonzero) rows.insert(std::move(row));
            }
        }
        if (!next_pattern_mixed_radix(base, A)) break;
    }
    return rows;
}

std::vector<bool> constant_flags_rat(const RatMatrix& basis) {
    std::vector<bool> out;
    for (const auto& row : basis) {
        bool constant = true;
        for (const auto& x : row)
            if (x != row[0]) constant = false;
        out.push_back(constant);
    }
    return out;
}

}  // namespace

ConservationBasis conserved_basis(const LocalRule& rule) {
    const int A = rule.alphabet().size;
    RatMatrix m;
    for (const auto& row : balance_rows(rule)) {
        RatVec r(A);
        for (int i = 0; i < A; ++i) r[i] = row[i];
        m.push_back(std::move(r));
    }
    ConservationBasis basis;
    basis.domain = Domain::Rational;
    basis.alphabet = A;
    basis.rational_basis = nullspace(m, A);
    basis.trivial = constant_flags_rat(basis.rational_basis);
    return basis;
}

ConservationBasis conserved_basis_mod(const LocalRule& rule, std::int64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("modulus must be positive");
    const int A = rule.alphabet().size;
    IntMatrix m;
    for (const auto& row : balance_rows(rule)) {
        IntVec r(A);
        for (int i = 0; i < A; ++i) r[i] = static_cast<long>(row[i]);
        m.push_back(std::move(r));
    }
    ConservationBasis basis;
    basis.domain = Domain::Mod;
    basis.modulus = modulus;
    basis.alphabet = A;
    basis.mod_basis = mod_solution_generators(m, A, modulus);
    for (const auto& row : basis.mod_basis) {
        bool constant = true;
        for (const auto& x : row)
            if (x != row[0]) constant = false;
        basis.trivial.push_back(constant);
    }
    return basis;
}

bool basis_contains(const ConservationBasis& basis, const Quantity& phi) {
    if (phi.alphabet() != basis.alphabet)
        throw std::invalid_argument("alphabet mismatch");
    if (basis.domain == Domain::Mod) {
        if (phi.domain() != Domain::Mod || phi.modulus() != basis.modulus)
            throw std::invalid_argument("domain mismatch");
        IntMatrix lattice = basis.mod_basis;
        for (int i = 0; i < basis.alphabet; ++i) {
            IntVec row(basis.alphabet, 0);
            row[i] = static_cast<long>(basis.modulus);
            lattice.push_back(std::move(row));
        }
        IntMatrix h = hnf(std::move(lattice));
        IntVec v(basis.alphabet);
        for (int i = 0; i < basis.alphabet; ++i) v[i] = static_cast<long>(phi.residue(i));
        return lattice_coordinates(h, v).has_value();
    }
    if (phi.domain() == Domain::Mod) throw std::invalid_argument("domain mismatch");
    for (int k = 0; k < phi.components(); ++k) {
        RatVec v(basis.alphabet);
        for (int s = 0; s < basis.alphabet; ++s) v[s] = phi.value(s)[k];
        if (!in_row_span(basis.rational_basis, v)) return false;
    }
    return true;
}

TorusCheckResult conserved_on_torus_exhaustive(const LocalRule& rule, const Quantity& phi,
                                               const std::vector<int>& moduli,
                                               std::uint64_t cap) {
    require_moduli(rule.nbhd(), moduli);
    std::size_t n = 1;
    for (int m : moduli) n *= static_cast<std::size_t>(m);
    checked_power(rule.alphabet().size, n, cap);  // throws when the sweep exceeds the cap

    std::vector<Symbol> cells(n, 0);
    while (true) {
        TorusConfig a(moduli, cells);
        if (!(total(phi, a) == total(phi, step(rule, a))))
            return {false, a};
        if (!next_pattern_mixed_radix(cells, rule.alphabet().size)) break;
    }
    return {true, std::nullopt};
}

TorusCheckResult conserved_on_torus_sampled(const LocalRule& rule, const Quantity& phi,
                                            const std::vector<int>& moduli, std::uint64_t n,
                                            std::uint64_t seed) {
    require_moduli(rule.nbhd(), moduli);
    std::size_t sites = 1;
    for (int m : moduli) sites *= static_cast<std::size_t>(m);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, rule.alphabet().size - 1);
    for (std::uint64_t t = 0; t < n; ++t) {
        std::vector<Symbol> cells(sites);
        for (auto& c : cells) c = pick(rng);
        TorusConfig a(moduli, std::move(cells));
        if (!(total(phi, a) == total(phi, step(rule, a))))
            return {false, a};
    }
    return {true, std::nullopt};
}

SandwichReport sandwich_check(const LocalRule& rule, const Quantity& phi,
                              const Configuration& a, const Window& w) {
    require_sandwich_quantity(phi);
    Configuration image = step(rule, a);
    SandwichReport r;
    r.interior_total = total_window(phi, a, interior(w, rule.nbhd()));
    r.image_total = total_window(phi, image, w);
    r.closure_total = total_window(phi, a, closure(w, rule.nbhd()));
    r.lower_ok = leq(r.interior_total, r.image_total);
    r.upper_ok = leq(r.image_total, r.closure_total);
    return r;
}

SandwichReport sandwich_check(const LocalRule& rule, const Quantity& phi,
                              const TorusConfig& a, const Window& w) {
    require_sandwich_quantity(phi);
    TorusConfig image = step(rule, a);
    Window wr = reduce_window(w, a);
    Window cl = reduce_window(closure(wr, rule.nbhd()), a);
    // interior needs membership tests after reduction
    Window in;
    for (const auto& p : wr) {
        bool inside = true;
        for (const auto& b : rule.nbhd().offsets())
            if (!wr.count(a.point_at(a.index_of(add(p, b))))) {
                inside = false;
                break;
            }
        if (inside) in.insert(p);
    }
    SandwichReport r;
    r.interior_total = total_window(phi, a, in);
    r.image_total = total_window(phi, image, wr);
    r.closure_total = total_window(phi, a, cl);
    r.lower_ok = leq(r.interior_total, r.image_total);
    r.upper_ok = leq(r.image_total, r.closure_total);
    return r;
}

Symbol EventuallyPeriodic1D::at(long i) const {
    const long l = static_cast<long>(left_tail.size());
    const long r = static_cast<long>(right_tail.size());
    if (i >= -l && i < 0) return left_tail[i + l];
    if (i >= 0 && i < r) return right_tail[i];
    const long n = static_cast<long>(core.size());
    long m = i % n;
    if (m < 0) m += n;
    return core[m];
}

Rational cesaro_average(const Quantity& phi, const EventuallyPeriodic1D& a) {
    if (phi.domain() != Domain::Rational)
        throw std::invalid_argument("box averages need a scalar rational quantity");
    if (a.core.empty()) throw std::invalid_argument("periodic core must be nonempty");
    Rational sum(0);
    for (Symbol s : a.core) sum += phi.scalar(s);
    return sum / Rational(static_cast<long>(a.core.size()));
}

Rational cesaro_average(const Quantity& phi, const TorusConfig& a) {
    if (phi.domain() != Domain::Rational)
        throw std::invalid_argument("box averages need a scalar rational quantity");
    Rational sum(0);
    for (Symbol s : a.cells()) sum += phi.scalar(s);
    return sum / Rational(static_cast<long>(a.site_count()));
}

UniformSumReport uniform_sum_check(const LocalRule& rule, const Quantity& phi) {
    if (phi.alphabet() != rule.alphabet().size)
        throw std::invalid_argument("quantity alphabet does not match rule");
    UniformSumReport r;
    r.table_side = zero_total(phi);
    for (Symbol out : rule.table()) accumulate(r.table_side, phi, out);

    TotalValue alphabet_sum = zero_total(phi);
    for (Symbol s = 0; s < phi.alphabet(); ++s) accumulate(alphabet_sum, phi, s);
    BigInt factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(rule.alphabet().size),
                  static_cast<unsigned long>(rule.nbhd().size() - 1));
    r.symbol_side = scale(alphabet_sum, factor, phi.modulus());
    r.holds = (r.table_side == r.symbol_side);
    return r;
}

RatMatrix marginal_basis(int alphabet, int word_len) {
    if (alphabet < 1 || word_len < 1) throw std::invalid_argument("bad marginal shape");
    const std::uint64_t words = checked_power(alphabet, word_len);
    const std::uint64_t stubs = words / static_cast<std::uint64_t>(alphabet);
    RatMatrix rows;
    for (std::uint64_t u = 0; u < stubs; ++u) {
        RatVec row(words, Rational(0));
        for (int s = 0; s < alphabet; ++s) {
            row[static_cast<std::uint64_t>(s) * stubs + u] += 1;  // s prepended
            row[u * alphabet + static_cast<std::uint64_t>(s)] -= 1;  // s appended
        }
        rows.push_back(std::move(row));
    }
    return nullspace(rows, static_cast<int>(words));
}

MarginalReport marginal_invariance_check(const LocalRule& rule, const Quantity& phi) {
    if (rule.dimension() != 1)
        throw std::invalid_argument("marginal invariance test is one-dimensional only");
    if (phi.domain() == Domain::Mod)
        throw std::invalid_argument("marginal invariance test needs a rational quantity");
    if (phi.alphabet() != rule.alphabet().size)
        throw std::invalid_argument("quantity alphabet does not match rule");

    const int A = rule.alphabet().size;
    const int lo = rule.nbhd().bounding_min()[0];
    const int hi = rule.nbhd().bounding_max()[0];
    const int w = hi - lo + 1;
    const std::uint64_t words = checked_power(A, w);

    // positions of the rule's offsets inside the enclosing interval
    std::vector<int> pos;
    for (const auto& b : rule.nbhd().offsets()) pos.push_back(b[0] - lo);
    const int center = -lo;

    // per-word update increment: phi after one step at the origin minus phi
    // at the origin
    std::vector<RatVec> incr(words);
    std::vector<Symbol> word(w), win(pos.size());
    for (std::uint64_t code = 0; code < words; ++code) {
        word = decode_pattern(code, A, w);
        for (std::size_t i = 0; i < pos.size(); ++i) win[i] = word[pos[i]];
        Symbol out = rule.apply_local(win);
        incr[code] = phi.value(out) - phi.value(word[center]);
    }

    RatMatrix basis = marginal_basis(A, w);
    MarginalReport rep;
    rep.space_dimension = static_cast<int>(basis.size());
    rep.holds = true;
    for (const auto& nu : basis) {
        RatVec pairing(phi.components(), Rational(0));
        for (std::uint64_t code = 0; code < words; ++code) {
            if (nu[code] == 0) continue;
            for (int k = 0; k < phi.components(); ++k)
                pairing[k] += nu[code] * incr[code][k];
        }
        if (!is_zero(pairing)) {
            rep.holds = false;
            break;
        }
    }
    return rep;
}

}  // namespace calaw
