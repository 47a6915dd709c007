#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/cells.hpp"
#include "dispgen/core.hpp"
#include "dispgen/prng.hpp"
#include "dispgen/restriction.hpp"
#include "dispgen/splitter.hpp"
#include "dispgen/universal.hpp"

namespace dispgen {

enum class SolverKind { greedy, randomized };

struct PipelineOptions {
  SolverKind solver = SolverKind::greedy;
  std::uint64_t seed = 0;
  std::uint64_t randomized_batch = 256;
  // Testing knob: replaces the arity a_m of the cell-cover route. Anything
  // below a_m voids the dispersion certificate; the solution is then only a
  // k-restriction solution for the overridden arity.
  std::optional<int> k_override;
  Budgets budgets;
};

struct GenerationResult {
  UnitPointSet points;
  Order order;
  int padded_dim = 0;       // d* (equals dim for the universal route)
  std::string certificate;  // "condition-S", "condition-S-prime", "k-restriction(k=...)", "none"
  bool certified = false;   // construction-time certification outcome
  std::uint64_t solver_words = 0;  // words before truncation/dedup
};

namespace detail {

inline GridPointSet words_to_grid(const WordSet& words, int m, int keep_dims) {
  std::vector<std::vector<std::int32_t>> pts;
  std::set<std::vector<std::int32_t>> seen;
  for (const auto& w : words.words()) {
    std::vector<std::int32_t> x(static_cast<std::size_t>(keep_dims));
    for (int i = 0; i < keep_dims; ++i)
      x[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(w[static_cast<std::size_t>(i)]) + 1;
    if (seen.insert(x).second) pts.push_back(std::move(x));
  }
  return GridPointSet(m, keep_dims, std::move(pts));
}

}  // namespace detail

// Universal-set route: a (d, a_m, 2^m-1)-universal set, shifted onto the
// grid {1..2^m-1}^d and divided by 2^m. The output satisfies condition (S)
// of order m, hence has dispersion at most 2^-m <= epsilon.
inline GenerationResult generate_pattern_complete(const Rational& epsilon, int dim,
                                                  const PipelineOptions& opts = {}) {
  const Order order = make_order(epsilon, dim);
  UniversalSpec spec{dim, static_cast<int>(order.active_budget), static_cast<int>(order.grid_values())};
  const WordSet words =
      build_universal(spec, UniversalStrategy::direct_greedy, opts.budgets,
                      opts.solver == SolverKind::randomized, opts.seed, opts.randomized_batch);
  GridPointSet grid = detail::words_to_grid(words, order.m, dim);
  GenerationResult r{to_unit_points(grid), order, dim, "condition-S", true, words.size()};
  return r;
}

// Cell-cover route: solves the canonical restriction system of order m on
// d* = max(d, floor(2/epsilon)) coordinates, directly when d* <= a_m^2 and
// through an (d*, a_m, a_m^2)-splitter pullback otherwise, then truncates to
// the first d coordinates. The output satisfies condition (S') of order m: a
// d-dimensional box of volume v lifts to a d*-dimensional box of the same
// volume, so covering the lifted cells covers the originals.
inline GenerationResult generate_cell_cover(const Rational& epsilon, int dim,
                                            const PipelineOptions& opts = {}) {
  const Order order = make_order(epsilon, dim);
  const int m = order.m;
  const int dstar = std::max<int>(
      dim, static_cast<int>(floor_rational(Rational(2) / epsilon).convert_to<std::int64_t>()));
  const int arity_full = static_cast<int>(active_budget_for(m, dstar));
  const int arity = opts.k_override.value_or(arity_full);
  if (arity < 1 || arity > arity_full)
    throw std::domain_error("k override must lie in [1, a_m]");
  const bool overridden = arity != arity_full;
  if (!overridden && m >= 3)
    throw std::domain_error(
        "cell-cover construction at full fidelity is feasible for m = 2 only (epsilon >= 1/8); "
        "the order-" + std::to_string(m) + " canonical system is astronomically large");

  const CellSystem system = build_cell_system(m, arity, opts.budgets);
  const int b = static_cast<int>(order.grid_values());

  auto solve = [&](const RestrictionProblem& problem) {
    return opts.solver == SolverKind::randomized
               ? solve_randomized(problem, opts.seed, opts.randomized_batch, opts.budgets)
               : solve_greedy(problem, opts.budgets);
  };

  RestrictionProblem target(b, arity, dstar, system.sets);
  WordSet words = [&] {
    if (dstar <= arity * arity) return solve(target).words;
    const RestrictionProblem small(b, arity, arity * arity, system.sets);
    const WordSet core = solve(small).words;
    const SplitterFamily family = build_rs_splitter(dstar, arity, opts.budgets);
    return compose(core, family);
  }();

  bool certified = false;
  if (target.constraint_count() <= opts.budgets.verify_checks)
    certified = verify_solution(words, target, opts.budgets);
  if (target.constraint_count() <= opts.budgets.verify_checks && !certified)
    throw std::logic_error("cell-cover solution failed verification");

  GridPointSet grid = detail::words_to_grid(words, m, dim);
  GenerationResult r{to_unit_points(grid), order, dstar,
                     overridden ? "k-restriction(k=" + std::to_string(arity) + ")"
                                : "condition-S-prime",
                     certified, words.size()};
  return r;
}

// Uncertified i.i.d. baseline: N = ceil(m 2^{2m+4} ln(2^{m+3} d)) uniform
// grid points, the threshold at which random sets succeed with positive
// probability. Collisions are redrawn so exactly N distinct points come
// back. For comparison tables; certification is the caller's choice.
inline GenerationResult generate_random_baseline(const Rational& epsilon, int dim,
                                                 std::uint64_t seed) {
  const Order order = make_order(epsilon, dim);
  const int m = order.m;
  const std::uint64_t n_points =
      ceil_mul_ln(Rational(BigInt(m) * pow2(2 * static_cast<unsigned>(m) + 4)),
                  pow2(static_cast<unsigned>(m) + 3) * dim);
  SplitMix64 rng(seed);
  const std::uint64_t values = static_cast<std::uint64_t>(order.grid_values());
  std::set<std::vector<std::int32_t>> seen;
  std::vector<std::vector<std::int32_t>> pts;
  while (pts.size() < n_points) {
    std::vector<std::int32_t> x(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a)
      x[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(rng.below(values)) + 1;
    if (seen.insert(x).second) pts.push_back(std::move(x));
  }
  GridPointSet grid(m, dim, std::move(pts));
  return GenerationResult{to_unit_points(grid), order, dim, "none", false, n_points};
}

}  // namespace dispgen
