#include "calaw/engine.hpp"

#include <stdexcept>

namespace calaw {

bool is_vacuum_preserving(const LocalRule& rule, const Quantity& phi) {
    if (phi.alphabet() != rule.alphabet().size)
        throw std::invalid_argument("quantity alphabet does not match rule");
    std::vector<Symbol> vac = phi.vacuum_set();
    const int n = rule.nbhd().size();
    std::vector<int> digits(n, 0);
    std::vector<Symbol> pattern(n);
    if (vac.empty()) return true;
    while (true) {
        for (int i = 0; i < n; ++i) pattern[i] = vac[digits[i]];
        if (!phi.is_vacuum(rule.apply_local(pattern))) return false;
        int i = n - 1;
        while (i >= 0 && digits[i] == static_cast<int>(vac.size()) - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
    }
    return true;
}

Configuration step(const LocalRule& rule, const Configuration& a) {
    if (a.dimension() != rule.dimension())
        throw std::invalid_argument("configuration dimension does not match rule");
    const Symbol bg = a.background();
    std::vector<Symbol> bg_pattern(rule.nbhd().size(), bg);
    if (rule.apply_local(bg_pattern) != bg)
        throw std::domain_error("background not quiescent: rule moves the background symbol");

    Configuration out(a.dimension(), bg);
    std::vector<Symbol> window(rule.nbhd().size());
    for (const auto& x : closure(a.override_sites(), rule.nbhd())) {
        int i = 0;
        for (const auto& b : rule.nbhd().offsets()) window[i++] = a.at(add(x, b));
        Symbol s = rule.apply_local(window);
        if (s != bg) out.set(x, s);
    }
    return out;
}

TorusConfig step(const LocalRule& rule, const TorusConfig& a) {
    if (a.dimension() != rule.dimension())
        throw std::invalid_argument("torus dimension does not match rule");
    require_moduli(rule.nbhd(), a.moduli());

    const auto& offs = rule.nbhd().offsets();
    std::vector<Symbol> cells(a.site_count());
    std::vector<Symbol> window(offs.size());
    for (std::size_t idx = 0; idx < a.site_count(); ++idx) {
        Point x = a.point_at(idx);
        for (std::size_t i = 0; i < offs.size(); ++i) window[i] = a.at(add(x, offs[i]));
        cells[idx] = rule.apply_local(window);
    }
    return TorusConfig(a.moduli(), std::move(cells));
}

Configuration embed(const std::vector<Symbol>& pattern, const Window& w,
                    const Quantity& phi, int dimension) {
    auto vac = phi.designated_vacuum();
    if (!vac)
        throw std::domain_error("cannot embed: quantity has an empty vacuum set");
    if (pattern.size() != w.size())
        throw std::invalid_argument("pattern length does not match window");
    Configuration out(dimension, *vac);
    std::size_t i = 0;
    for (const auto& p : w) {
        if (pattern[i] != *vac) out.set(p, pattern[i]);
        ++i;
    }
    return out;
}

}  // namespace calaw
