#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/cells.hpp"
#include "dispgen/core.hpp"
#include "dispgen/detail/subsets.hpp"
#include "dispgen/errors.hpp"
#include "dispgen/prng.hpp"

namespace dispgen {

struct DispersionResult {
  Rational volume;
  AxisBox witness;  // closed endpoints; its open interior avoids the set
};

struct VerifyMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 4096;

  static VerifyMode sampled(std::uint64_t seed, std::uint64_t samples) {
    return VerifyMode{Kind::sampled, seed, samples};
  }
};

namespace detail {

// Exhaustive largest-empty-box search on scaled integer coordinates. The
// supremum over boxes with open interiors is attained on boxes whose faces
// sit on point coordinates or on the cube boundary, so per-axis endpoints
// from {0, 2^m} plus the point coordinates enumerate it exactly. Boxes are
// visited in lexicographic endpoint order and only strict improvements are
// kept, which makes the reported witness the lexicographically smallest
// maximizer.
template <class VolInt>
class EmptyBoxSearch {
 public:
  EmptyBoxSearch(const std::vector<std::vector<std::int32_t>>& pts, int dim, std::int32_t scale,
                 std::uint64_t node_budget)
      : pts_(pts), dim_(dim), scale_(scale), node_budget_(node_budget) {
    endpoints_.resize(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      auto& e = endpoints_[static_cast<std::size_t>(a)];
      e.push_back(0);
      e.push_back(scale);
      for (const auto& p : pts) e.push_back(p[static_cast<std::size_t>(a)]);
      std::sort(e.begin(), e.end());
      e.erase(std::unique(e.begin(), e.end()), e.end());
    }
    tail_cap_.assign(static_cast<std::size_t>(dim) + 1, VolInt(1));
    for (int a = dim - 1; a >= 0; --a)
      tail_cap_[static_cast<std::size_t>(a)] = tail_cap_[static_cast<std::size_t>(a) + 1] * scale;
    active_.resize(static_cast<std::size_t>(dim) + 1);
    auto& root = active_[0];
    root.resize(pts.size());
    std::iota(root.begin(), root.end(), 0u);
    box_.resize(static_cast<std::size_t>(dim));
  }

  void run() { descend(0, VolInt(1)); }

  VolInt best_volume() const { return best_; }
  const std::vector<std::pair<std::int32_t, std::int32_t>>& best_box() const { return best_box_; }

 private:
  void descend(int axis, VolInt prefix) {
    if (axis == dim_) {
      if (active_[static_cast<std::size_t>(axis)].empty() && prefix > best_) {
        best_ = prefix;
        best_box_ = box_;
      }
      return;
    }
    const auto& eps = endpoints_[static_cast<std::size_t>(axis)];
    const VolInt& cap = tail_cap_[static_cast<std::size_t>(axis) + 1];
    for (std::size_t lo = 0; lo + 1 < eps.size(); ++lo) {
      for (std::size_t hi = lo + 1; hi < eps.size(); ++hi) {
        if (++nodes_ > node_budget_)
          throw BudgetError("oracle_candidates", nodes_, node_budget_);
        const VolInt width = VolInt(eps[hi] - eps[lo]);
        if (prefix * width * cap <= best_) continue;
        auto& next = active_[static_cast<std::size_t>(axis) + 1];
        next.clear();
        for (std::uint32_t idx : active_[static_cast<std::size_t>(axis)]) {
          const std::int32_t c = pts_[idx][static_cast<std::size_t>(axis)];
          if (eps[lo] < c && c < eps[hi]) next.push_back(idx);
        }
        box_[static_cast<std::size_t>(axis)] = {eps[lo], eps[hi]};
        descend(axis + 1, prefix * width);
      }
    }
  }

  const std::vector<std::vector<std::int32_t>>& pts_;
  int dim_;
  std::int32_t scale_;
  std::uint64_t node_budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<std::int32_t>> endpoints_;
  std::vector<VolInt> tail_cap_;
  std::vector<std::vector<std::uint32_t>> active_;
  std::vector<std::pair<std::int32_t, std::int32_t>> box_;
  VolInt best_ = VolInt(0);
  std::vector<std::pair<std::int32_t, std::int32_t>> best_box_;
};

inline AxisBox box_from_scaled(const std::vector<std::pair<std::int32_t, std::int32_t>>& scaled,
                               const BigInt& denom) {
  std::vector<AxisInterval> axes;
  axes.reserve(scaled.size());
  for (auto [lo, hi] : scaled)
    axes.push_back(AxisInterval{Rational(lo, denom), Rational(hi, denom), true, true});
  return AxisBox(std::move(axes));
}

}  // namespace detail

// Exact dispersion of a dyadic point set: the maximum volume of an
// axis-parallel box whose open interior misses every point, with a witness.
// A point on a box boundary does not block the box; the supremum over the
// mixed open/closed convention is the same value.
inline DispersionResult exact_dispersion(const UnitPointSet& p, const Budgets& budgets = {}) {
  const int d = p.dim();
  if (d > budgets.oracle_max_dim)
    throw BudgetError("oracle_dim", static_cast<std::uint64_t>(d),
                      static_cast<std::uint64_t>(budgets.oracle_max_dim));
  {
    BigInt estimate = 1;
    const BigInt per_axis_points(p.size() + 2);
    for (int a = 0; a < d; ++a) estimate *= per_axis_points * (per_axis_points - 1) / 2;
    if (estimate > budgets.oracle_max_candidates)
      throw BudgetError("oracle_candidates", estimate.str(), budgets.oracle_max_candidates);
  }
  const std::int32_t scale = static_cast<std::int32_t>(p.scale());
  const BigInt denom = BigInt(scale);
  const BigInt total = ipow(denom, static_cast<unsigned>(d));

  if (static_cast<long>(p.m()) * d <= 62) {
    detail::EmptyBoxSearch<std::int64_t> search(p.numerators(), d, scale,
                                                budgets.oracle_max_candidates);
    search.run();
    return {Rational(BigInt(search.best_volume()), total),
            detail::box_from_scaled(search.best_box(), denom)};
  }
  detail::EmptyBoxSearch<BigInt> search(p.numerators(), d, scale, budgets.oracle_max_candidates);
  search.run();
  return {Rational(search.best_volume(), total), detail::box_from_scaled(search.best_box(), denom)};
}

// Heuristic lower bound for dimensions beyond the exact oracle's budget:
// grows an empty box around random probe points drawn strictly off the grid
// (odd numerators one level finer), clipping the axis that keeps the most
// volume until no point is interior. Deterministic in (seed, sample_count);
// the result never exceeds the true dispersion because every returned box is
// empty by construction.
inline DispersionResult dispersion_lower_bound(const UnitPointSet& p, const VerifyMode& mode) {
  const int d = p.dim();
  const std::int64_t fine = p.scale() * 2;
  SplitMix64 rng(mode.seed);
  const std::uint64_t samples = std::max<std::uint64_t>(1, mode.sample_count);

  BigInt best_num = -1;
  std::vector<std::pair<std::int32_t, std::int32_t>> best_box;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
  std::vector<std::uint32_t> active;
  std::vector<std::int64_t> probe(static_cast<std::size_t>(d));

  for (std::uint64_t t = 0; t < samples; ++t) {
    for (int a = 0; a < d; ++a)
      probe[static_cast<std::size_t>(a)] =
          2 * static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(p.scale()))) + 1;
    std::fill(lo.begin(), lo.end(), 0);
    std::fill(hi.begin(), hi.end(), fine);
    active.resize(p.size());
    std::iota(active.begin(), active.end(), 0u);

    for (;;) {
      // Drop points no longer interior; stop when none are left.
      std::size_t keep = 0;
      for (std::uint32_t idx : active) {
        bool inside = true;
        for (int a = 0; a < d; ++a) {
          const std::int64_t c = 2 * static_cast<std::int64_t>(p.numerators()[idx][static_cast<std::size_t>(a)]);
          if (!(lo[static_cast<std::size_t>(a)] < c && c < hi[static_cast<std::size_t>(a)])) {
            inside = false;
            break;
          }
        }
        if (inside) active[keep++] = idx;
      }
      active.resize(keep);
      if (active.empty()) break;

      const auto& blocker = p.numerators()[active[0]];
      int best_axis = 0;
      std::int64_t best_new = -1, best_old = 1;
      for (int a = 0; a < d; ++a) {
        const std::int64_t c = 2 * static_cast<std::int64_t>(blocker[static_cast<std::size_t>(a)]);
        const std::int64_t width = hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)];
        const std::int64_t clipped = c > probe[static_cast<std::size_t>(a)]
                                         ? c - lo[static_cast<std::size_t>(a)]
                                         : hi[static_cast<std::size_t>(a)] - c;
        // Keep the clip with the largest surviving width fraction.
        if (static_cast<__int128>(clipped) * best_old > static_cast<__int128>(best_new) * width) {
          best_axis = a;
          best_new = clipped;
          best_old = width;
        }
      }
      const std::int64_t c = 2 * static_cast<std::int64_t>(blocker[static_cast<std::size_t>(best_axis)]);
      if (c > probe[static_cast<std::size_t>(best_axis)])
        hi[static_cast<std::size_t>(best_axis)] = c;
      else
        lo[static_cast<std::size_t>(best_axis)] = c;
    }

    BigInt vol = 1;
    for (int a = 0; a < d; ++a) vol *= hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)];
    if (vol > best_num) {
      best_num = vol;
      best_box.clear();
      for (int a = 0; a < d; ++a)
        best_box.emplace_back(static_cast<std::int32_t>(lo[static_cast<std::size_t>(a)]),
                              static_cast<std::int32_t>(hi[static_cast<std::size_t>(a)]));
    }
  }
  const BigInt denom(fine);
  return {Rational(best_num, ipow(denom, static_cast<unsigned>(d))),
          detail::box_from_scaled(best_box, denom)};
}

// Condition (S): every a_m-subset of axes carries all (2^m-1)^{a_m} grid
// patterns. Implemented literally, including the degenerate a_m = d case
// where it demands the full grid.
inline bool verify_condition_s(const GridPointSet& t, const Budgets& budgets = {}) {
  const int m = t.m(), d = t.dim();
  const auto arity = active_budget_for(m, d);
  const BigInt want_big = ipow((BigInt(1) << m) - 1, static_cast<unsigned>(arity));
  const BigInt checks = detail::binomial(d, arity) * want_big;
  if (checks > budgets.verify_checks)
    throw BudgetError("verify_checks", checks.str(), budgets.verify_checks);
  const std::uint64_t want = want_big.convert_to<std::uint64_t>();
  if (t.size() < want) return false;

  const auto& pts = t.points();
  const std::uint64_t base = (std::uint64_t{1} << m) - 1;
  const bool stamp_path = want <= (std::uint64_t{1} << 24);
  return detail::all_subsets_satisfy(
      d, arity, budgets.workers, [&](const std::vector<std::int32_t>& subset) {
        if (stamp_path) {
          thread_local std::vector<std::uint32_t> stamp;
          thread_local std::uint32_t generation = 0;
          if (stamp.size() < want) stamp.assign(want, 0);
          ++generation;
          std::uint64_t distinct = 0;
          for (const auto& x : pts) {
            std::uint64_t code = 0;
            for (std::int32_t i : subset)
              code = code * base + static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)] - 1);
            if (stamp[code] != generation) {
              stamp[code] = generation;
              if (++distinct == want) return true;
            }
          }
          return false;
        }
        thread_local std::vector<std::uint64_t> codes;
        codes.clear();
        codes.reserve(pts.size());
        for (const auto& x : pts) {
          std::uint64_t code = 0;
          for (std::int32_t i : subset)
            code = code * base + static_cast<std::uint64_t>(x[static_cast<std::size_t>(i)] - 1);
          codes.push_back(code);
        }
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
        return codes.size() == want;
      });
}

namespace detail {

inline bool hits_cell(const std::vector<std::vector<std::int32_t>>& pts, const IndexPair& pair) {
  for (const auto& x : pts) {
    bool inside = true;
    for (std::size_t l = 0; l < pair.lengths.size(); ++l) {
      const auto c = x[l];
      if (c < pair.anchors[l] || c > pair.anchors[l] + pair.lengths[l] - 1) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

}  // namespace detail

// Condition (S'): the set meets the core cell of every nonempty index pair.
// Exhaustive mode enumerates the pairs (budgeted); sampled mode draws
// sample_count pairs deterministically from the seed, biased toward sparse
// active supports but covering all of them.
inline bool verify_condition_s_prime(const GridPointSet& t, const VerifyMode& mode = {},
                                     const Budgets& budgets = {}) {
  const int m = t.m(), d = t.dim();
  const auto& pts = t.points();
  if (mode.kind == VerifyMode::Kind::exhaustive) {
    bool ok = true;
    detail::for_each_index_pair(m, d, budgets, [&](const IndexPair& pair) {
      ok = detail::hits_cell(pts, pair);
      return ok;
    });
    return ok;
  }

  SplitMix64 rng(mode.seed);
  const std::int32_t top = std::int32_t{1} << m;
  const auto arity = active_budget_for(m, d);
  IndexPair pair;
  pair.lengths.assign(static_cast<std::size_t>(d), top - 1);
  pair.anchors.assign(static_cast<std::size_t>(d), 1);
  for (std::uint64_t s = 0; s < mode.sample_count; ++s) {
    // Redraw until the active prefix clears its share of the volume bound.
    for (;;) {
      std::fill(pair.lengths.begin(), pair.lengths.end(), top - 1);
      std::fill(pair.anchors.begin(), pair.anchors.end(), 1);
      const auto active_count =
          top <= 2 ? 0 : rng.below(static_cast<std::uint64_t>(arity) + 1);
      BigInt product = 1;
      std::vector<std::int32_t> axes(static_cast<std::size_t>(d));
      std::iota(axes.begin(), axes.end(), 0);
      for (std::uint64_t j = 0; j < active_count; ++j) {
        const auto pick = j + rng.below(static_cast<std::uint64_t>(d) - j);
        std::swap(axes[j], axes[pick]);
        const auto axis = static_cast<std::size_t>(axes[j]);
        const auto sv = 1 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(top - 2)));
        pair.lengths[axis] = sv;
        pair.anchors[axis] = 1 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(top - sv)));
        product *= sv + 1;
      }
      if (product * ipow(BigInt(top), static_cast<unsigned>(d) - static_cast<unsigned>(active_count)) >
          ipow(BigInt(2), static_cast<unsigned>(m) * static_cast<unsigned>(d - 1))) {
        break;
      }
    }
    if (!detail::hits_cell(pts, pair)) return false;
  }
  return true;
}

}  // namespace dispgen
