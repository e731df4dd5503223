#include "calaw/fluxpdr.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace calaw {

namespace {

std::int64_t overlap(std::int64_t lo1, std::int64_t hi1, std::int64_t lo2, std::int64_t hi2) {
    // half-open from the left: (lo, hi]
    return std::max<std::int64_t>(0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

}  // namespace

FluxAnalyzer::FluxAnalyzer(const LocalRule& rule, const Quantity& phi)
    : rule_(rule), phi_(phi) {
    if (rule_.dimension() != 1)
        throw std::invalid_argument("flux is defined for one-dimensional rules only");
    const int b = rule_.nbhd().bounding_max()[0];
    if (!(rule_.nbhd() == Neighborhood::box(1, b)))
        throw std::invalid_argument("flux needs an interval neighborhood [-B..B]");
    radius_ = b;
    if (!phi_.is_natural())
        throw std::invalid_argument("flux needs a natural-valued quantity");
    auto vac = phi_.designated_vacuum();
    if (!vac) throw std::domain_error("flux needs a quantity with a vacuum symbol");
    vacuum_ = *vac;
    phi_int_.resize(phi_.alphabet());
    for (Symbol s = 0; s < phi_.alphabet(); ++s) phi_int_[s] = to_int64(phi_.scalar(s).get_num());
    if (!is_conserved(rule_, phi_).conserved)
        throw std::domain_error("flux needs a conserved quantity");

    std::uint64_t words = 0;
    try {
        words = checked_power(rule_.alphabet().size, 2 * radius_ + 1, 1ull << 22);
    } catch (const std::overflow_error&) {
        words = 0;  // fall back to uncached recomputation
    }
    if (words > 0) {
        cache_.assign(words, 0);
        cached_.assign(words, 0);
    }
}

std::int64_t FluxAnalyzer::compute_flux(const std::vector<Symbol>& word) const {
    const int b = radius_;
    // plant the word on [-B..B] over vacuum and tally both sides of the edge
    // (0,1): incoming mass on (-inf..0] minus image mass there
    std::int64_t in_sum = 0;
    for (int i = 0; i <= b; ++i) in_sum += phi_int_[word[i]];
    std::int64_t out_sum = 0;
    std::vector<Symbol> win(2 * b + 1);
    for (int y = -2 * b; y <= 0; ++y) {
        for (int t = -b; t <= b; ++t) {
            int pos = y + t;
            win[t + b] = (pos >= -b && pos <= b) ? word[pos + b] : vacuum_;
        }
        out_sum += phi_int_[rule_.apply_local(win)];
    }
    return in_sum - out_sum;
}

std::int64_t FluxAnalyzer::right_flux_word(const std::vector<Symbol>& word) const {
    if (static_cast<int>(word.size()) != 2 * radius_ + 1)
        throw std::invalid_argument("flux word must have length 2B+1");
    if (cache_.empty()) return compute_flux(word);
    std::uint64_t code = encode_pattern(word, rule_.alphabet().size);
    if (!cached_[code]) {
        cache_[code] = compute_flux(word);
        cached_[code] = 1;
    }
    return cache_[code];
}

std::int64_t FluxAnalyzer::flux_of_code(std::uint64_t code) const {
    if (!cache_.empty() && cached_[code]) return cache_[code];
    std::vector<Symbol> word = decode_pattern(code, rule_.alphabet().size, 2 * radius_ + 1);
    return right_flux_word(word);
}

template <typename Cfg>
std::vector<Symbol> FluxAnalyzer::word_at(const Cfg& a, long z) const {
    std::vector<Symbol> word(2 * radius_ + 1);
    for (int i = -radius_; i <= radius_; ++i)
        word[i + radius_] = a.at(Point{static_cast<int>(z + i)});
    return word;
}

std::int64_t FluxAnalyzer::right_flux(const Configuration& a, long z) const {
    return right_flux_word(word_at(a, z));
}

std::int64_t FluxAnalyzer::right_flux(const TorusConfig& a, long z) const {
    return right_flux_word(word_at(a, z));
}

FluxValue FluxAnalyzer::flux_at(const Configuration& a, long z) const {
    FluxValue f;
    f.right = right_flux(a, z);
    f.left = -right_flux(a, z - 1);
    f.out = f.left + f.right;
    return f;
}

FluxValue FluxAnalyzer::flux_at(const TorusConfig& a, long z) const {
    FluxValue f;
    f.right = right_flux(a, z);
    f.left = -right_flux(a, z - 1);
    f.out = f.left + f.right;
    return f;
}

namespace {

template <typename Cfg>
FluxIdentityReport identities(const FluxAnalyzer& fa, const Cfg& a, long z) {
    const int b = fa.radius();
    const LocalRule& rule = fa.rule();
    auto value = [&](long y) { return fa.phi_of(a.at(Point{static_cast<int>(y)})); };
    auto image_value = [&](long y) {
        std::vector<Symbol> win(2 * b + 1);
        for (int t = -b; t <= b; ++t) win[t + b] = a.at(Point{static_cast<int>(y + t)});
        return fa.phi_of(rule.apply_local(win));
    };

    FluxIdentityReport r;
    r.flux = fa.flux_at(a, z);
    r.site_change = image_value(z) - value(z);
    r.out_balances = (r.flux.out == -r.site_change);

    std::int64_t in_lo = 0, in_hi = 0, img_lo = 0, img_hi = 0;
    for (long y = z - b; y <= z; ++y) {
        in_lo += value(y);
        img_lo += image_value(y);
    }
    for (long y = z; y <= z + b; ++y) {
        in_hi += value(y);
        img_hi += image_value(y);
    }
    r.bound_right_by_input = r.flux.right <= in_lo;
    r.bound_right_by_image = r.flux.right <= img_hi;
    r.bound_left_by_input = r.flux.left <= in_hi;
    r.bound_left_by_image = r.flux.left <= img_lo;
    return r;
}

}  // namespace

FluxIdentityReport flux_identities_check(const FluxAnalyzer& fa, const Configuration& a, long z) {
    return identities(fa, a, z);
}

FluxIdentityReport flux_identities_check(const FluxAnalyzer& fa, const TorusConfig& a, long z) {
    return identities(fa, a, z);
}

DisplacementRule::DisplacementRule(int alphabet, int radius,
                                   std::vector<std::vector<std::int64_t>> counts)
    : alphabet_(alphabet), radius_(radius), counts_(std::move(counts)) {
    if (alphabet_ < 1 || radius_ < 0) throw std::invalid_argument("bad displacement shape");
    std::uint64_t expect = checked_power(alphabet_, 4 * radius_ + 1);
    if (counts_.size() != expect)
        throw std::invalid_argument("displacement table has wrong pattern count");
    for (const auto& row : counts_) {
        if (static_cast<int>(row.size()) != 2 * radius_ + 1)
            throw std::invalid_argument("displacement row has wrong offset count");
        for (std::int64_t c : row)
            if (c < 0) throw std::invalid_argument("displacement counts must be nonnegative");
    }
}

std::int64_t DisplacementRule::count(std::uint64_t code, int offset) const {
    if (offset < -radius_ || offset > radius_) return 0;
    return counts_[code][offset + radius_];
}

DisplacementRule build_displacement_rule(const LocalRule& rule, const Quantity& phi) {
    FluxAnalyzer fa(rule, phi);
    const int b = fa.radius();
    const int A = rule.alphabet().size;
    const std::uint64_t patterns = checked_power(A, 4 * b + 1);

    std::vector<std::vector<std::int64_t>> table(patterns,
                                                 std::vector<std::int64_t>(2 * b + 1, 0));
    std::vector<Symbol> pat(4 * b + 1, 0);
    while (true) {
        std::uint64_t code = encode_pattern(pat, A);
        auto& d = table[code];
        if (b == 0) {
            // zero-radius rules cannot move anything: every site keeps its value
            d[0] = fa.phi_of(pat[0]);
            if (!next_pattern_mixed_radix(pat, A)) break;
            continue;
        }

        std::vector<Symbol> central(pat.begin() + b, pat.begin() + 3 * b + 1);
        std::vector<Symbol> shifted(pat.begin() + b - 1, pat.begin() + 3 * b);
        const std::int64_t iright = fa.right_flux_word(central);
        const std::int64_t ileft = -fa.right_flux_word(shifted);

        std::vector<Symbol> image = rule.apply_patch(pat);  // positions [-B..B]
        auto cap = [&](int off) { return fa.phi_of(image[off + b]); };
        const std::int64_t at_origin = fa.phi_of(pat[2 * b]);

        // cumulative destination capacity walking away from the origin
        std::vector<std::int64_t> cum_right(b + 1, 0), cum_left(b + 1, 0);
        for (int k = 1; k <= b; ++k) {
            cum_right[k] = cum_right[k - 1] + cap(k);
            cum_left[k] = cum_left[k - 1] + cap(-k);
        }

        if (iright <= 0 && ileft <= 0) {
            // net inflow on both edges: everything at the origin stays put
            d[b] = at_origin;
        } else if (iright >= 0 && ileft >= 0) {
            for (int k = 1; k <= b; ++k) {
                d[b + k] = overlap(0, iright, cum_right[k - 1], cum_right[k]);
                d[b - k] = overlap(0, ileft, cum_left[k - 1], cum_left[k]);
            }
            d[b] = at_origin - iright - ileft;
        } else if (iright > 0) {
            // through-traffic from the left fills the origin first, then the
            // nearest destinations on the right; local particles queue after
            const std::int64_t j0 = cap(0);
            const std::int64_t j1 = std::max<std::int64_t>(0, -ileft - j0);
            for (int k = 1; k <= b; ++k)
                d[b + k] = overlap(j1, iright, cum_right[k - 1], cum_right[k]);
            d[b] = std::max<std::int64_t>(0, j0 + ileft);
        } else {
            const std::int64_t j0 = cap(0);
            const std::int64_t j1 = std::max<std::int64_t>(0, -iright - j0);
            for (int k = 1; k <= b; ++k)
                d[b - k] = overlap(j1, ileft, cum_left[k - 1], cum_left[k]);
            d[b] = std::max<std::int64_t>(0, j0 + iright);
        }

        std::int64_t paid = 0;
        for (std::int64_t c : d) paid += c;
        if (paid != at_origin || *std::min_element(d.begin(), d.end()) < 0)
            throw std::logic_error("displacement assignment failed to pay out the site value");

        if (!next_pattern_mixed_radix(pat, A)) break;
    }
    return DisplacementRule(A, b, std::move(table));
}

PdrVerifyReport verify_displacement_rule(const LocalRule& rule, const Quantity& phi,
                                         const DisplacementRule& d, std::uint64_t trials,
                                         std::uint64_t seed) {
    if (rule.dimension() != 1)
        throw std::invalid_argument("displacement verification is one-dimensional only");
    if (!phi.is_natural())
        throw std::invalid_argument("displacement verification needs a natural-valued quantity");
    auto vac = phi.designated_vacuum();
    if (!vac) throw std::domain_error("displacement verification needs a vacuum symbol");
    const int A = rule.alphabet().size;
    const int b = d.radius();

    std::vector<std::int64_t> value(A);
    for (Symbol s = 0; s < A; ++s) value[s] = to_int64(phi.scalar(s).get_num());

    PdrVerifyReport rep;

    // payout identity, exhaustive over the doubled window
    std::vector<Symbol> pat(4 * b + 1, 0);
    while (true) {
        std::uint64_t code = encode_pattern(pat, A);
        std::int64_t paid = 0;
        for (int off = -b; off <= b; ++off) paid += d.count(code, off);
        ++rep.outflow_checked;
        if (paid != value[pat[2 * b]]) {
            ++rep.outflow_violations;
            if (!rep.first_bad_pattern) rep.first_bad_pattern = code;
        }
        if (!next_pattern_mixed_radix(pat, A)) break;
    }

    // arrival identity plus global ledgers on random finite-support inputs
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, A - 1);
    std::uniform_int_distribution<int> width(b + 1, b + 7);
    const int rb = rule.nbhd().bounding_max()[0];
    if (!(rule.nbhd() == Neighborhood::box(1, rb)))
        throw std::invalid_argument("displacement verification needs an interval neighborhood");
    for (std::uint64_t t = 0; t < trials; ++t) {
        const int half = width(rng);
        std::vector<Symbol> line(2 * half + 1);
        for (auto& s : line) s = pick(rng);

        auto at = [&](long y) -> Symbol {
            if (y < -half || y > half) return *vac;
            return line[y + half];
        };
        auto word_around = [&](long x, int r) {
            std::vector<Symbol> w(2 * r + 1);
            for (int i = -r; i <= r; ++i) w[i + r] = at(x + i);
            return w;
        };
        auto image_at = [&](long y) { return rule.apply_local(word_around(y, rb)); };

        std::int64_t mass_before = 0, mass_after = 0, paid_total = 0, arrived_total = 0;
        bool bad = false;
        for (long z = -half - 3 * b - rb; z <= half + 3 * b + rb; ++z) {
            mass_before += value[at(z)];
            mass_after += value[image_at(z)];
            std::uint64_t around_z = encode_pattern(word_around(z, 2 * b), A);
            for (int off = -b; off <= b; ++off) paid_total += d.count(around_z, off);
            std::int64_t arrived = 0;
            for (long x = z - b; x <= z + b; ++x) {
                std::uint64_t around_x = encode_pattern(word_around(x, 2 * b), A);
                arrived += d.count(around_x, static_cast<int>(z - x));
            }
            arrived_total += arrived;
            ++rep.inflow_checked;
            if (arrived != value[image_at(z)]) {
                ++rep.inflow_violations;
                bad = true;
            }
        }
        ++rep.ledger_checked;
        if (paid_total != mass_before || arrived_total != mass_after || mass_before != mass_after)
            ++rep.ledger_violations;
        (void)bad;
    }
    return rep;
}

Reconstruction reconstruct_rule(const Quantity& phi, const DisplacementRule& d,
                                std::uint64_t cap) {
    if (!phi.is_natural())
        throw std::invalid_argument("reconstruction needs a natural-valued quantity");
    if (phi.alphabet() != d.alphabet())
        throw std::invalid_argument("quantity alphabet does not match displacement rule");
    const int A = d.alphabet();
    const int b = d.radius();

    std::vector<std::int64_t> value(A);
    for (Symbol s = 0; s < A; ++s) value[s] = to_int64(phi.scalar(s).get_num());

    // arrival count at the origin as a function of the tripled window
    const int full = 6 * b + 1;
    const std::uint64_t wide_patterns = checked_power(A, full, cap);
    std::vector<std::int64_t> arrive(wide_patterns, 0);
    std::vector<Symbol> pat(full, 0);
    while (true) {
        std::uint64_t code = encode_pattern(pat, A);
        std::int64_t m = 0;
        for (int x = -b; x <= b; ++x) {
            std::vector<Symbol> sub(pat.begin() + (x + b), pat.begin() + (x + 5 * b + 1));
            m += d.count(encode_pattern(sub, A), -x);
        }
        arrive[code] = m;
        if (!next_pattern_mixed_radix(pat, A)) break;
    }

    // narrow the dependence as far as the arrival counts allow
    auto narrowed = [&](int r) -> std::optional<std::vector<std::int64_t>> {
        const std::uint64_t n = checked_power(A, 2 * r + 1);
        std::vector<std::int64_t> m(n, -1);
        std::vector<Symbol> q(full, 0);
        while (true) {
            std::vector<Symbol> centre(q.begin() + (3 * b - r), q.begin() + (3 * b + r + 1));
            std::uint64_t key = encode_pattern(centre, A);
            std::int64_t val = arrive[encode_pattern(q, A)];
            if (m[key] == -1)
                m[key] = val;
            else if (m[key] != val)
                return std::nullopt;
            if (!next_pattern_mixed_radix(q, A)) break;
        }
        return m;
    };

    int radius = 3 * b;
    std::vector<std::int64_t> m_table = arrive;
    for (int r : {b, 2 * b}) {
        if (auto m = narrowed(r)) {
            radius = r;
            m_table = std::move(*m);
            break;
        }
    }

    // symbols available for each arrival count
    std::vector<std::vector<Symbol>> choices(m_table.size());
    std::uint64_t total_rules = 1;
    for (std::size_t i = 0; i < m_table.size(); ++i) {
        for (Symbol s = 0; s < A; ++s)
            if (value[s] == m_table[i]) choices[i].push_back(s);
        if (choices[i].empty())
            throw std::domain_error("incompatible displacement totals: no symbol carries value " +
                                    std::to_string(m_table[i]));
        if (total_rules > cap / choices[i].size())
            throw std::overflow_error("reconstruction would enumerate too many rules");
        total_rules *= choices[i].size();
    }

    Reconstruction out;
    out.radius = radius;
    out.unique = (total_rules == 1);
    Neighborhood nbhd = Neighborhood::box(1, radius);
    std::vector<std::size_t> idx(m_table.size(), 0);
    while (true) {
        std::vector<Symbol> table(m_table.size());
        for (std::size_t i = 0; i < table.size(); ++i) table[i] = choices[i][idx[i]];
        out.rules.emplace_back(Alphabet(A), nbhd, std::move(table));
        int i = static_cast<int>(idx.size()) - 1;
        while (i >= 0 && idx[i] + 1 == choices[i].size()) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }

    // all candidates share the same phi-profile, so one check covers them
    if (!is_conserved(out.rules.front(), phi).conserved)
        throw std::domain_error("displacement table is not realized by any conserving rule");
    return out;
}

}  // namespace calaw
