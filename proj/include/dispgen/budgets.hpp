#pragma once

#include <cstdint>

namespace dispgen {

// Hard ceilings for the operations that are exponential in the worst case.
// All of them surface as BudgetError; none truncate silently.
struct Budgets {
  // exact_dispersion: ambient dimension and candidate-box ceiling.
  int oracle_max_dim = 4;
  std::uint64_t oracle_max_candidates = 100'000'000;

  // solve_greedy / solve_randomized: materialized (subset, set) constraints.
  std::uint64_t solver_constraints = 20'000'000;

  // brute-force verifiers (verify_solution, is_universal, is_splitter,
  // condition (S)): streamed (subset, set) or (subset, pattern) checks.
  std::uint64_t verify_checks = 1'000'000'000;

  // index-pair enumeration: emitted pairs.
  std::uint64_t index_pairs = 10'000'000;

  // predicate-backed restriction sets: b^k ceiling for expansion.
  std::uint64_t set_expansion = 1'000'000;

  // thread count for the embarrassingly parallel verifiers; results are
  // identical for every value.
  int workers = 1;
};

}  // namespace dispgen
