#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/core.hpp"
#include "dispgen/errors.hpp"
#include "dispgen/restriction.hpp"

namespace dispgen {

// Index (s, p) of one nonempty class of boxes of volume > 2^-m: axis lengths
// in ((s_l)/2^m, (s_l+1)/2^m] and left endpoints in [p_l - 1/2^m, p_l).
// Anchors store 2^m * p_l as integers.
struct IndexPair {
  std::vector<std::int32_t> lengths;  // s_l in {1..2^m-1}
  std::vector<std::int32_t> anchors;  // 2^m p_l in {1..2^m - s_l}

  bool operator==(const IndexPair& o) const {
    return lengths == o.lengths && anchors == o.anchors;
  }
};

namespace detail {

// Streams every nonempty (s, p) in lexicographic order (axis-major, s before
// anchor) until fn returns false. Nonemptiness is characterized per axis by
// anchor + s <= 2^m and globally by prod(s_l + 1) > 2^{m(d-1)}; the
// characterization is validated against a brute-force interval-existence
// oracle in the test suite before anything trusts it. The anchor loop is
// split off since only s enters the product condition.
template <class Fn>
void for_each_index_pair(int m, int dim, const Budgets& budgets, Fn&& fn) {
  if (m < 1 || m > 20) throw std::domain_error("grid order out of range");
  if (dim < 1) throw std::domain_error("dimension must be positive");
  const std::int32_t top = (std::int32_t{1} << m);
  const BigInt threshold = ipow(BigInt(2), static_cast<unsigned>(m) * static_cast<unsigned>(dim - 1));
  std::vector<BigInt> tail_cap(static_cast<std::size_t>(dim) + 1, 1);
  for (int r = dim - 1; r >= 0; --r)
    tail_cap[static_cast<std::size_t>(r)] = tail_cap[static_cast<std::size_t>(r) + 1] * top;

  std::vector<std::int32_t> s(static_cast<std::size_t>(dim));
  std::vector<std::int32_t> anchor(static_cast<std::size_t>(dim));
  std::uint64_t emitted = 0;

  auto emit_anchors = [&](auto&& self, int axis) -> bool {
    if (axis == dim) {
      if (++emitted > budgets.index_pairs)
        throw BudgetError("index_pairs", emitted, budgets.index_pairs);
      return fn(IndexPair{s, anchor});
    }
    for (std::int32_t p = 1; p + s[static_cast<std::size_t>(axis)] <= top; ++p) {
      anchor[static_cast<std::size_t>(axis)] = p;
      if (!self(self, axis + 1)) return false;
    }
    return true;
  };

  auto walk = [&](auto&& self, int axis, const BigInt& product) -> bool {
    if (axis == dim) {
      return product > threshold ? emit_anchors(emit_anchors, 0) : true;
    }
    for (std::int32_t v = 1; v < top; ++v) {
      const BigInt next = product * (v + 1);
      if (next * tail_cap[static_cast<std::size_t>(axis) + 1] <= threshold) continue;
      s[static_cast<std::size_t>(axis)] = v;
      if (!self(self, axis + 1, next)) return false;
    }
    return true;
  };
  walk(walk, 0, BigInt(1));
}

}  // namespace detail

inline std::vector<IndexPair> enumerate_index_pairs(int m, int dim, const Budgets& budgets = {}) {
  std::vector<IndexPair> out;
  detail::for_each_index_pair(m, dim, budgets, [&](IndexPair p) {
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

// The closed box every member of the class contains:
// prod_l [p_l, p_l + (s_l - 1)/2^m].
inline AxisBox core_box(const IndexPair& pair, int m) {
  const BigInt den = pow2(static_cast<unsigned>(m));
  std::vector<AxisInterval> axes;
  axes.reserve(pair.lengths.size());
  for (std::size_t l = 0; l < pair.lengths.size(); ++l) {
    axes.push_back(AxisInterval{Rational(pair.anchors[l], den),
                                Rational(pair.anchors[l] + pair.lengths[l] - 1, den), true, true});
  }
  return AxisBox(std::move(axes));
}

// Grid trace of the core box scaled by 2^m: the product of integer ranges
// [anchor_l, anchor_l + s_l - 1], as a restriction set over {0..2^m-1} whose
// used symbols stay in {1..2^m-1}.
inline RestrictionSet core_cell(const IndexPair& pair, int m) {
  std::vector<std::pair<std::uint16_t, std::uint16_t>> ranges;
  ranges.reserve(pair.lengths.size());
  for (std::size_t l = 0; l < pair.lengths.size(); ++l)
    ranges.emplace_back(static_cast<std::uint16_t>(pair.anchors[l]),
                        static_cast<std::uint16_t>(pair.anchors[l] + pair.lengths[l] - 1));
  return RestrictionSet::product_range(static_cast<int>(pair.lengths.size()), 1 << m,
                                       std::move(ranges));
}

// The canonical restriction system: cells of the pairs whose active support
// sits inside the first `arity` coordinates (s = 2^m - 1 and the forced
// anchor 1 beyond them), shifted to the 0-based alphabet {0..2^m-2}. Padding
// coordinates contribute a factor 2^m to the nonemptiness product, so the
// global condition is prod(s_l + 1) > 2^{m(arity - 1)} over the prefix alone
// and the system does not depend on the ambient dimension.
struct CellSystem {
  int m = 0;
  int arity = 0;
  std::vector<RestrictionSet> sets;
  std::vector<IndexPair> pairs;  // arity-dimensional prefixes
};

inline CellSystem build_cell_system(int m, int arity, const Budgets& budgets = {}) {
  if (m < 2) throw std::domain_error("cell systems need order m >= 2");
  if (arity < 1) throw std::domain_error("arity must be positive");
  CellSystem system;
  system.m = m;
  system.arity = arity;
  const int b = (1 << m) - 1;
  detail::for_each_index_pair(m, arity, budgets, [&](IndexPair pair) {
    std::vector<std::pair<std::uint16_t, std::uint16_t>> ranges;
    ranges.reserve(pair.lengths.size());
    for (std::size_t l = 0; l < pair.lengths.size(); ++l)
      ranges.emplace_back(static_cast<std::uint16_t>(pair.anchors[l] - 1),
                          static_cast<std::uint16_t>(pair.anchors[l] + pair.lengths[l] - 2));
    system.sets.push_back(RestrictionSet::product_range(arity, b, std::move(ranges)));
    system.pairs.push_back(std::move(pair));
    return true;
  });

  // Set-count and minimal-size guarantees. These are theorems about the
  // enumeration, so a violation is an implementation bug.
  const BigInt count_cap = pow2(2 * static_cast<unsigned>(m) * static_cast<unsigned>(arity));
  if (BigInt(system.sets.size()) > count_cap)
    throw std::logic_error("cell system exceeds its 2^(2mk) cardinality bound");
  const BigInt size_floor_num = ipow(BigInt(b), static_cast<unsigned>(arity));
  const BigInt size_scale = pow2(static_cast<unsigned>(m) + 4);
  for (const auto& s : system.sets)
    if (BigInt(s.size()) * size_scale < size_floor_num)
      throw std::logic_error("cell below the 2^-(m+4) density bound");
  return system;
}

}  // namespace dispgen
