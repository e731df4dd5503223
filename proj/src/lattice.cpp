#include "calaw/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace calaw {

Point add(const Point& a, const Point& b) {
    if (a.size() != b.size()) throw std::invalid_argument("point dimension mismatch");
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point negate(const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Neighborhood::Neighborhood(int dimension, std::vector<Point> offsets)
    : dimension_(dimension), offsets_(std::move(offsets)) {
    if (dimension_ < 1) throw std::invalid_argument("dimension must be positive");
    for (const auto& p : offsets_)
        if (static_cast<int>(p.size()) != dimension_)
            throw std::invalid_argument("offset dimension mismatch");
    std::sort(offsets_.begin(), offsets_.end());
    offsets_.erase(std::unique(offsets_.begin(), offsets_.end()), offsets_.end());
    if (offsets_.empty()) throw std::invalid_argument("neighborhood must be nonempty");
    for (const auto& p : offsets_)
        if (!contains(negate(p)))
            throw std::invalid_argument("neighborhood must be symmetric");
    if (!contains(Point(dimension_, 0)))
        throw std::invalid_argument("neighborhood must contain the origin");
}

Neighborhood Neighborhood::box(int dimension, int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    std::vector<Point> pts;
    Point cur(dimension, -radius);
    while (true) {
        pts.push_back(cur);
        int axis = dimension - 1;
        while (axis >= 0 && cur[axis] == radius) cur[axis--] = -radius;
        if (axis < 0) break;
        ++cur[axis];
    }
    return Neighborhood(dimension, std::move(pts));
}

bool Neighborhood::contains(const Point& p) const {
    return std::binary_search(offsets_.begin(), offsets_.end(), p);
}

int Neighborhood::index_of(const Point& p) const {
    auto it = std::lower_bound(offsets_.begin(), offsets_.end(), p);
    if (it == offsets_.end() || *it != p) return -1;
    return static_cast<int>(it - offsets_.begin());
}

Neighborhood Neighborhood::sum(const Neighborhood& other) const {
    if (dimension_ != other.dimension_)
        throw std::invalid_argument("neighborhood dimension mismatch");
    std::set<Point> pts;
    for (const auto& a : offsets_)
        for (const auto& b : other.offsets_) pts.insert(add(a, b));
    return Neighborhood(dimension_, std::vector<Point>(pts.begin(), pts.end()));
}

Neighborhood Neighborhood::doubled() const { return sum(*this); }

std::vector<int> Neighborhood::bounding_min() const {
    std::vector<int> lo(dimension_, 0);
    for (const auto& p : offsets_)
        for (int i = 0; i < dimension_; ++i) lo[i] = std::min(lo[i], p[i]);
    return lo;
}

std::vector<int> Neighborhood::bounding_max() const {
    std::vector<int> hi(dimension_, 0);
    for (const auto& p : offsets_)
        for (int i = 0; i < dimension_; ++i) hi[i] = std::max(hi[i], p[i]);
    return hi;
}

Window closure(const Window& w, const Neighborhood& nbhd) {
    Window out;
    for (const auto& p : w)
        for (const auto& b : nbhd.offsets()) out.insert(add(p, b));
    return out;
}

Window interior(const Window& w, const Neighborhood& nbhd) {
    Window out;
    for (const auto& p : w) {
        bool inside = true;
        for (const auto& b : nbhd.offsets()) {
            if (!w.count(add(p, b))) {
                inside = false;
                break;
            }
        }
        if (inside) out.insert(p);
    }
    return out;
}

Window box_window(const Point& lo, const Point& hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box corner dimension mismatch");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return {};
    Window out;
    Point cur = lo;
    while (true) {
        out.insert(cur);
        int axis = static_cast<int>(lo.size()) - 1;
        while (axis >= 0 && cur[axis] == hi[axis]) cur[axis] = lo[axis], --axis;
        if (axis < 0) break;
        ++cur[axis];
    }
    return out;
}

Configuration::Configuration(int dimension, Symbol background, std::map<Point, Symbol> overrides)
    : dimension_(dimension), background_(background), overrides_(std::move(overrides)) {
    for (auto it = overrides_.begin(); it != overrides_.end();) {
        if (static_cast<int>(it->first.size()) != dimension_)
            throw std::invalid_argument("override point dimension mismatch");
        if (it->second == background_)
            it = overrides_.erase(it);
        else
            ++it;
    }
}

Symbol Configuration::at(const Point& p) const {
    auto it = overrides_.find(p);
    return it == overrides_.end() ? background_ : it->second;
}

void Configuration::set(const Point& p, Symbol s) {
    if (static_cast<int>(p.size()) != dimension_)
        throw std::invalid_argument("point dimension mismatch");
    if (s == background_)
        overrides_.erase(p);
    else
        overrides_[p] = s;
}

Window Configuration::override_sites() const {
    Window w;
    for (const auto& [p, _] : overrides_) w.insert(p);
    return w;
}

TorusConfig::TorusConfig(std::vector<int> moduli, std::vector<Symbol> cells)
    : moduli_(std::move(moduli)), cells_(std::move(cells)) {
    if (moduli_.empty()) throw std::invalid_argument("torus needs at least one modulus");
    std::size_t n = 1;
    for (int m : moduli_) {
        if (m < 1) throw std::invalid_argument("torus moduli must be positive");
        n *= static_cast<std::size_t>(m);
    }
    if (cells_.size() != n)
        throw std::invalid_argument("torus cell count does not match moduli");
}

std::size_t TorusConfig::index_of(const Point& p) const {
    if (p.size() != moduli_.size()) throw std::invalid_argument("point dimension mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        int m = moduli_[i];
        int c = p[i] % m;
        if (c < 0) c += m;
        idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(c);
    }
    return idx;
}

Point TorusConfig::point_at(std::size_t idx) const {
    Point p(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
        p[i] = static_cast<int>(idx % static_cast<std::size_t>(moduli_[i]));
        idx /= static_cast<std::size_t>(moduli_[i]);
    }
    return p;
}

bool moduli_admit(const Neighborhood& nbhd, const std::vector<int>& moduli) {
    if (static_cast<int>(moduli.size()) != nbhd.dimension()) return false;
    Neighborhood dbl = nbhd.doubled();
    auto lo = dbl.bounding_min();
    auto hi = dbl.bounding_max();
    for (int i = 0; i < nbhd.dimension(); ++i)
        if (moduli[i] <= hi[i] - lo[i]) return false;
    return true;
}

void require_moduli(const Neighborhood& nbhd, const std::vector<int>& moduli) {
    if (!moduli_admit(nbhd, moduli))
        throw std::invalid_argument(
            "torus moduli too small: doubled neighborhood does not embed");
}

std::vector<Symbol> restrict_to(const Configuration& a, const Window& w) {
    std::vector<Symbol> out;
    out.reserve(w.size());
    for (const auto& p : w) out.push_back(a.at(p));
    return out;
}

}  // namespace calaw
