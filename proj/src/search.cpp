#include "calaw/search.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <stdexcept>
#include <thread>

namespace calaw {

namespace {

// One balance constraint on the unknown table: the phi-sum over plus-entries
// minus the phi-sum over minus-entries must equal phi(high) - phi(low).
struct TableConstraint {
    std::vector<std::uint32_t> plus, minus;
    Symbol low = 0, high = 0;
    std::uint32_t max_index = 0;
};

std::vector<TableConstraint> build_constraints(const Alphabet& alphabet,
                                               const Neighborhood& nbhd) {
    const int A = alphabet.size;
    const Neighborhood dbl = nbhd.doubled();
    const int L = dbl.size();
    const int origin = dbl.index_of(Point(nbhd.dimension(), 0));
    const auto windows = patch_index_map(nbhd);

    std::set<std::tuple<std::vector<std::uint32_t>, std::vector<std::uint32_t>, Symbol, Symbol>>
        seen;
    std::vector<Symbol> pat(L, 0);
    std::vector<Symbol> base(L - 1, 0);
    std::vector<Symbol> win(nbhd.size());
    std::vector<std::vector<std::uint32_t>> codes(A);
    while (true) {
        for (int i = 0, j = 0; i < L; ++i)
            if (i != origin) pat[i] = base[j++];
        for (Symbol s = 0; s < A; ++s) {
            pat[origin] = s;
            codes[s].clear();
            for (const auto& row : windows) {
                for (std::size_t k = 0; k < row.size(); ++k) win[k] = pat[row[k]];
                codes[s].push_back(static_cast<std::uint32_t>(encode_pattern(win, A)));
            }
            std::sort(codes[s].begin(), codes[s].end());
        }
        for (Symbol a = 0; a < A; ++a) {
            for (Symbol c = a + 1; c < A; ++c) {
                // cancel lookups shared by both sides
                std::vector<std::uint32_t> plus, minus;
                std::set_difference(codes[c].begin(), codes[c].end(), codes[a].begin(),
                                    codes[a].end(), std::back_inserter(plus));
                std::set_difference(codes[a].begin(), codes[a].end(), codes[c].begin(),
                                    codes[c].end(), std::back_inserter(minus));
                seen.insert({plus, minus, a, c});
            }
        }
        if (!next_pattern_mixed_radix(base, A)) break;
    }

    std::vector<TableConstraint> out;
    for (const auto& [plus, minus, low, high] : seen) {
        TableConstraint tc{plus, minus, low, high, 0};
        for (auto i : plus) tc.max_index = std::max(tc.max_index, i);
        for (auto i : minus) tc.max_index = std::max(tc.max_index, i);
        out.push_back(std::move(tc));
    }
    return out;
}

// Exact constraint evaluation specialized per coefficient domain.
class Evaluator {
  public:
    explicit Evaluator(const Quantity& phi) : phi_(phi) {}

    bool satisfied(const TableConstraint& tc, const std::vector<Symbol>& table) const {
        if (phi_.domain() == Domain::Mod) {
            const std::int64_t m = phi_.modulus();
            std::int64_t acc = 0;
            for (auto i : tc.plus) acc = (acc + phi_.residue(table[i])) % m;
            for (auto i : tc.minus) acc = (acc - phi_.residue(table[i])) % m;
            std::int64_t want = (phi_.residue(tc.high) - phi_.residue(tc.low)) % m;
            return (acc - want) % m == 0;
        }
        const int K = phi_.components();
        RatVec acc(K, Rational(0));
        for (auto i : tc.plus) acc += phi_.value(table[i]);
        for (auto i : tc.minus) {
            const RatVec& v = phi_.value(table[i]);
            for (int k = 0; k < K; ++k) acc[k] -= v[k];
        }
        const RatVec want = phi_.value(tc.high) - phi_.value(tc.low);
        return acc == want;
    }

    // Uniform-sum necessary condition; only sound over the rationals, so the
    // scan skips it for residue quantities.
    bool prefilter_usable() const { return phi_.domain() != Domain::Mod; }

    void prepare_prefilter(const Neighborhood& nbhd) {
        target_ = zero_total(phi_);
        TotalValue alpha = zero_total(phi_);
        for (Symbol s = 0; s < phi_.alphabet(); ++s) accumulate(alpha, phi_, s);
        if (phi_.domain() == Domain::Mod) {
            std::int64_t f = 1;
            for (int i = 0; i < nbhd.size() - 1; ++i)
                f = (f * (phi_.alphabet() % phi_.modulus())) % phi_.modulus();
            target_.residue = (alpha.residue * f) % phi_.modulus();
        } else {
            BigInt f;
            mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(phi_.alphabet()),
                          static_cast<unsigned long>(nbhd.size() - 1));
            target_ = alpha;
            for (auto& x : target_.rat) x *= Rational(f);
        }
    }

    bool prefilter_pass(const std::vector<Symbol>& table) const {
        TotalValue t = zero_total(phi_);
        for (Symbol s : table) accumulate(t, phi_, s);
        return t == target_;
    }

  private:
    const Quantity& phi_;
    TotalValue target_;
};

struct SearchContext {
    const Alphabet& alphabet;
    const Neighborhood& nbhd;
    const Quantity& phi;
    std::vector<TableConstraint> constraints;
    // constraints become checkable once their highest table entry is set
    std::vector<std::vector<const TableConstraint*>> activate;
    int table_len = 0;
};

SearchContext make_context(const Alphabet& alphabet, const Neighborhood& nbhd,
                           const Quantity& phi) {
    if (phi.alphabet() != alphabet.size)
        throw std::invalid_argument("quantity alphabet does not match search alphabet");
    SearchContext ctx{alphabet, nbhd, phi, build_constraints(alphabet, nbhd), {}, 0};
    ctx.table_len = static_cast<int>(checked_power(alphabet.size, nbhd.size()));
    ctx.activate.resize(ctx.table_len);
    for (const auto& tc : ctx.constraints) ctx.activate[tc.max_index].push_back(&tc);
    return ctx;
}

void backtrack(const SearchContext& ctx, const Evaluator& eval, std::vector<Symbol>& table,
               int depth, std::vector<std::vector<Symbol>>& out) {
    if (depth == ctx.table_len) {
        out.push_back(table);
        return;
    }
    for (Symbol s = 0; s < ctx.alphabet.size; ++s) {
        table[depth] = s;
        bool ok = true;
        for (const TableConstraint* tc : ctx.activate[depth]) {
            if (!eval.satisfied(*tc, table)) {
                ok = false;
                break;
            }
        }
        if (ok) backtrack(ctx, eval, table, depth + 1, out);
    }
    table[depth] = 0;
}

}  // namespace

std::vector<LocalRule> enumerate_conserving(const Alphabet& alphabet, const Neighborhood& nbhd,
                                            const Quantity& phi, const SearchOptions& opts) {
    SearchContext ctx = make_context(alphabet, nbhd, phi);
    const int A = alphabet.size;
    const int T = ctx.table_len;

    bool scan_fits = true;
    std::uint64_t space = 0;
    try {
        space = checked_power(A, T, opts.cap);
    } catch (const std::overflow_error&) {
        scan_fits = false;
    }
    if (!scan_fits && !opts.backtracking)
        throw std::overflow_error(
            "rule space exceeds the exhaustive cap; use backtracking mode");

    const int shards = std::max(1, opts.shards);
    std::vector<std::vector<std::vector<Symbol>>> found(shards);
    std::vector<std::exception_ptr> errors(shards);

    if (!opts.backtracking) {
        std::vector<std::thread> pool;
        for (int w = 0; w < shards; ++w) {
            pool.emplace_back([&, w] {
                try {
                    Evaluator eval(phi);
                    if (eval.prefilter_usable()) eval.prepare_prefilter(nbhd);
                    auto cut = [&](int i) {
                        return static_cast<std::uint64_t>(
                            static_cast<unsigned __int128>(space) * i / shards);
                    };
                    std::uint64_t lo = cut(w);
                    std::uint64_t hi = cut(w + 1);
                    if (lo >= hi) return;
                    std::vector<Symbol> table = decode_pattern(lo, A, T);
                    for (std::uint64_t code = lo; code < hi; ++code) {
                        bool ok = !eval.prefilter_usable() || eval.prefilter_pass(table);
                        if (ok) {
                            for (const auto& tc : ctx.constraints) {
                                if (!eval.satisfied(tc, table)) {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if (ok) found[w].push_back(table);
                        next_pattern_mixed_radix(table, A);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
    } else {
        // split on a short table prefix; each worker completes its prefixes
        int prefix_len = 0;
        std::uint64_t prefixes = 1;
        while (prefix_len < T && prefixes < static_cast<std::uint64_t>(shards)) {
            prefixes *= static_cast<std::uint64_t>(A);
            ++prefix_len;
        }
        std::vector<std::thread> pool;
        for (int w = 0; w < shards; ++w) {
            pool.emplace_back([&, w, prefix_len, prefixes] {
                try {
                    Evaluator eval(phi);
                    std::uint64_t lo = prefixes * w / shards;
                    std::uint64_t hi = prefixes * (w + 1) / shards;
                    for (std::uint64_t pre = lo; pre < hi; ++pre) {
                        std::vector<Symbol> table(T, 0);
                        std::vector<Symbol> head = decode_pattern(pre, A, prefix_len);
                        std::copy(head.begin(), head.end(), table.begin());
                        bool ok = true;
                        for (int k = 0; k < prefix_len && ok; ++k)
                            for (const TableConstraint* tc : ctx.activate[k])
                                if (!eval.satisfied(*tc, table)) {
                                    ok = false;
                                    break;
                                }
                        if (ok) backtrack(ctx, eval, table, prefix_len, found[w]);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<LocalRule> rules;
    for (auto& shard : found)
        for (auto& table : shard) rules.emplace_back(alphabet, nbhd, std::move(table));
    return rules;
}

PrefilterStats prefilter_stats(const Alphabet& alphabet, const Neighborhood& nbhd,
                               const Quantity& phi, std::uint64_t cap) {
    SearchContext ctx = make_context(alphabet, nbhd, phi);
    const int A = alphabet.size;
    std::uint64_t space = checked_power(A, ctx.table_len, cap);

    Evaluator eval(phi);
    eval.prepare_prefilter(nbhd);
    PrefilterStats stats;
    std::vector<Symbol> table(ctx.table_len, 0);
    for (std::uint64_t code = 0; code < space; ++code) {
        ++stats.scanned;
        bool filter = eval.prefilter_pass(table);
        bool conserving = true;
        for (const auto& tc : ctx.constraints) {
            if (!eval.satisfied(tc, table)) {
                conserving = false;
                break;
            }
        }
        if (filter) ++stats.filter_pass;
        if (conserving) {
            ++stats.conserving;
            if (!filter) ++stats.conserving_filter_fail;
        }
        next_pattern_mixed_radix(table, A);
    }
    return stats;
}

}  // namespace calaw
