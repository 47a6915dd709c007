#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dispgen/rational.hpp"

namespace dispgen {

// Grid order for a target dispersion epsilon: the unique m with
// 2^-m <= epsilon < 2^-(m-1), plus the active-axis budget
// a_m = min(m * 2^m, d). Requiring epsilon <= 1/4 forces m >= 2.
struct Order {
  int m = 0;
  Rational epsilon;
  int dim = 0;
  std::int64_t active_budget = 0;  // a_m

  // Number of interior grid values per axis, 2^m - 1.
  std::int64_t grid_values() const { return (std::int64_t{1} << m) - 1; }
};

inline std::int64_t active_budget_for(int m, std::int64_t dim) {
  if (m >= 62) return dim;  // m * 2^m certainly exceeds any ambient dimension
  const std::int64_t cap = static_cast<std::int64_t>(m) << m;
  return std::min(cap, dim);
}

inline Order make_order(const Rational& epsilon, int dim) {
  if (epsilon <= 0 || epsilon > Rational(1, 4))
    throw std::domain_error("epsilon must lie in (0, 1/4], got " + to_string(epsilon));
  if (dim < 2) throw std::domain_error("dimension must be at least 2");
  // Smallest m with 2^-m <= epsilon, i.e. 2^m * num >= den.
  int m = 2;
  while ((numerator(epsilon) << m) < denominator(epsilon)) ++m;
  return Order{m, epsilon, dim, active_budget_for(m, dim)};
}

// Points with integer coordinates in {1,...,2^m-1}^d. Duplicate-free;
// iteration order is insertion order. Immutable after construction.
class GridPointSet {
 public:
  GridPointSet(int m, int dim, std::vector<std::vector<std::int32_t>> points)
      : m_(m), dim_(dim), points_(std::move(points)) {
    if (m < 1 || m > 30) throw std::domain_error("grid order out of range");
    if (dim < 1) throw std::domain_error("dimension must be positive");
    const std::int32_t hi = (std::int32_t{1} << m) - 1;
    std::set<std::vector<std::int32_t>> seen;
    for (const auto& p : points_) {
      if (static_cast<int>(p.size()) != dim)
        throw std::invalid_argument("point arity does not match dimension");
      for (std::int32_t c : p)
        if (c < 1 || c > hi)
          throw std::domain_error("grid coordinate " + std::to_string(c) +
                                  " outside {1,...," + std::to_string(hi) + "}");
      if (!seen.insert(p).second) throw std::invalid_argument("duplicate grid point");
    }
  }

  int m() const { return m_; }
  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::vector<std::int32_t>>& points() const { return points_; }

 private:
  int m_;
  int dim_;
  std::vector<std::vector<std::int32_t>> points_;
};

// Points with dyadic coordinates num/2^m, num in {1,...,2^m-1}; the exact
// image of a GridPointSet under division by 2^m. Stored as numerators so the
// round trip back to the grid is lossless.
class UnitPointSet {
 public:
  UnitPointSet(int m, int dim, std::vector<std::vector<std::int32_t>> numerators)
      : grid_(m, dim, std::move(numerators)) {}

  explicit UnitPointSet(GridPointSet grid) : grid_(std::move(grid)) {}

  int m() const { return grid_.m(); }
  int dim() const { return grid_.dim(); }
  std::size_t size() const { return grid_.size(); }
  std::int64_t scale() const { return std::int64_t{1} << grid_.m(); }
  const std::vector<std::vector<std::int32_t>>& numerators() const { return grid_.points(); }

  Rational coordinate(std::size_t point, int axis) const {
    return Rational(grid_.points()[point][static_cast<std::size_t>(axis)], BigInt(scale()));
  }

  const GridPointSet& as_grid() const { return grid_; }

 private:
  GridPointSet grid_;
};

inline UnitPointSet to_unit_points(const GridPointSet& t) { return UnitPointSet(t); }

inline GridPointSet to_grid_points(const UnitPointSet& p) { return p.as_grid(); }

struct AxisInterval {
  Rational lower;
  Rational upper;
  bool lower_closed = true;
  bool upper_closed = true;
};

// Axis-parallel box inside [0,1]^d with exact rational endpoints and
// per-endpoint open/closed flags.
class AxisBox {
 public:
  explicit AxisBox(std::vector<AxisInterval> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("box needs at least one axis");
    for (const auto& a : axes_) {
      if (a.lower < 0 || a.upper > 1 || a.lower > a.upper)
        throw std::domain_error("interval endpoints must satisfy 0 <= lower <= upper <= 1");
    }
  }

  static AxisBox unit_cube(int dim) {
    return AxisBox(std::vector<AxisInterval>(static_cast<std::size_t>(dim),
                                             AxisInterval{Rational(0), Rational(1), true, true}));
  }

  int dim() const { return static_cast<int>(axes_.size()); }
  const AxisInterval& axis(int i) const { return axes_[static_cast<std::size_t>(i)]; }
  const std::vector<AxisInterval>& axes() const { return axes_; }

  Rational volume() const {
    Rational v = 1;
    for (const auto& a : axes_) v *= a.upper - a.lower;
    return v;
  }

  bool interval_contains(int axis_index, const Rational& x) const {
    const auto& a = axes_[static_cast<std::size_t>(axis_index)];
    if (x < a.lower || (x == a.lower && !a.lower_closed)) return false;
    if (x > a.upper || (x == a.upper && !a.upper_closed)) return false;
    return true;
  }

  // True iff the open interior contains x (boundary points do not count).
  bool interior_contains(const std::vector<Rational>& x) const {
    for (int i = 0; i < dim(); ++i) {
      const auto& a = axes_[static_cast<std::size_t>(i)];
      if (!(a.lower < x[static_cast<std::size_t>(i)] && x[static_cast<std::size_t>(i)] < a.upper))
        return false;
    }
    return true;
  }

 private:
  std::vector<AxisInterval> axes_;
};

// Axes whose interval fails to contain the whole grid {1/2^m,...,(2^m-1)/2^m}.
// Returned 0-based. Boxes of volume > 2^-m have at most m*2^m of these.
inline std::vector<int> active_indices(const AxisBox& box, const Order& order) {
  if (box.dim() != order.dim)
    throw std::invalid_argument("box dimension does not match the order");
  const Rational first(1, pow2(static_cast<unsigned>(order.m)));
  const Rational last(pow2(static_cast<unsigned>(order.m)) - 1, pow2(static_cast<unsigned>(order.m)));
  std::vector<int> active;
  for (int j = 0; j < box.dim(); ++j) {
    // The interval is convex, so containing both extreme grid values is
    // equivalent to containing all of them.
    if (!(box.interval_contains(j, first) && box.interval_contains(j, last)))
      active.push_back(j);
  }
  return active;
}

}  // namespace dispgen
