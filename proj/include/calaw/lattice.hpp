#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace calaw {

// A lattice site in Z^D. Lexicographic vector order doubles as the canonical
// point order used for pattern digit positions.
using Point = std::vector<int>;

using Symbol = int;

Point add(const Point& a, const Point& b);
Point negate(const Point& a);

// Finite symmetric neighborhood of the origin. Offsets are kept sorted
// lexicographically; symmetry and the origin are required at construction
// (rules whose natural neighborhood omits the origin get padded upstream).
class Neighborhood {
  public:
    Neighborhood(int dimension, std::vector<Point> offsets);

    // Centered interval [-radius..radius]^dimension.
    static Neighborhood box(int dimension, int radius);

    int dimension() const { return dimension_; }
    const std::vector<Point>& offsets() const { return offsets_; }
    int size() const { return static_cast<int>(offsets_.size()); }
    bool contains(const Point& p) const;
    // Position of offset p in the canonical order, or -1.
    int index_of(const Point& p) const;

    // Minkowski sum with itself: the doubled window reached by two hops.
    Neighborhood doubled() const;
    // Minkowski sum with another neighborhood over the same lattice.
    Neighborhood sum(const Neighborhood& other) const;

    // Per-axis extents over the offsets (bounding box).
    std::vector<int> bounding_min() const;
    std::vector<int> bounding_max() const;

    bool operator==(const Neighborhood& o) const {
        return dimension_ == o.dimension_ && offsets_ == o.offsets_;
    }

  private:
    int dimension_;
    std::vector<Point> offsets_;  // sorted, distinct
};

// Arbitrary finite site set; the verification theorems quantify over these,
// so no box structure is assumed.
using Window = std::set<Point>;

Window closure(const Window& w, const Neighborhood& nbhd);
Window interior(const Window& w, const Neighborhood& nbhd);
Window box_window(const Point& lo, const Point& hi);

// Infinite configuration with uniform background: background symbol
// everywhere except a finite override map. Overrides never store the
// background value, so support and equality are canonical.
class Configuration {
  public:
    Configuration(int dimension, Symbol background)
        : dimension_(dimension), background_(background) {}
    Configuration(int dimension, Symbol background, std::map<Point, Symbol> overrides);

    int dimension() const { return dimension_; }
    Symbol background() const { return background_; }
    const std::map<Point, Symbol>& overrides() const { return overrides_; }

    Symbol at(const Point& p) const;
    void set(const Point& p, Symbol s);

    // Sites holding a non-background symbol.
    Window override_sites() const;

    bool operator==(const Configuration& o) const {
        return dimension_ == o.dimension_ && background_ == o.background_ &&
               overrides_ == o.overrides_;
    }

  private:
    int dimension_;
    Symbol background_;
    std::map<Point, Symbol> overrides_;
};

// Dense array over the product of cyclic groups (Z/M_1) x ... x (Z/M_D),
// row-major. Houses the finite-quotient configurations.
class TorusConfig {
  public:
    TorusConfig(std::vector<int> moduli, std::vector<Symbol> cells);

    const std::vector<int>& moduli() const { return moduli_; }
    const std::vector<Symbol>& cells() const { return cells_; }
    std::vector<Symbol>& cells() { return cells_; }
    int dimension() const { return static_cast<int>(moduli_.size()); }
    std::size_t site_count() const { return cells_.size(); }

    // Reduces p coordinate-wise into the fundamental domain.
    std::size_t index_of(const Point& p) const;
    Point point_at(std::size_t idx) const;
    Symbol at(const Point& p) const { return cells_[index_of(p)]; }

    bool operator==(const TorusConfig& o) const {
        return moduli_ == o.moduli_ && cells_ == o.cells_;
    }

  private:
    std::vector<int> moduli_;
    std::vector<Symbol> cells_;
};

// True when every pair of distinct points of nbhd.doubled() stays distinct
// under the quotient, i.e. each modulus exceeds the doubled bounding-box
// extent along its axis.
bool moduli_admit(const Neighborhood& nbhd, const std::vector<int>& moduli);
void require_moduli(const Neighborhood& nbhd, const std::vector<int>& moduli);

// Exact restriction a|_w in canonical (sorted) window order, background fill
// included.
std::vector<Symbol> restrict_to(const Configuration& a, const Window& w);

}  // namespace calaw
