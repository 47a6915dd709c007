#include <catch2/catch_amalgamated.hpp>

#include "dispgen/dispersion.hpp"
#include "oracles.hpp"

using namespace dispgen;

namespace {

UnitPointSet full_grid(int m, int d) {
  const std::int32_t top = (1 << m) - 1;
  std::vector<std::vector<std::int32_t>> pts;
  std::vector<std::int32_t> x(static_cast<std::size_t>(d), 1);
  for (;;) {
    pts.push_back(x);
    int a = d - 1;
    while (a >= 0 && x[static_cast<std::size_t>(a)] == top) {
      x[static_cast<std::size_t>(a)] = 1;
      --a;
    }
    if (a < 0) break;
    ++x[static_cast<std::size_t>(a)];
  }
  return UnitPointSet(m, d, std::move(pts));
}

UnitPointSet random_points(SplitMix64& rng, int m, int d, int count) {
  std::set<std::vector<std::int32_t>> seen;
  const std::uint64_t top = (std::uint64_t{1} << m) - 1;
  while (static_cast<int>(seen.size()) < count) {
    std::vector<std::int32_t> x(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) x[static_cast<std::size_t>(a)] = 1 + static_cast<std::int32_t>(rng.below(top));
    seen.insert(std::move(x));
  }
  return UnitPointSet(m, d, {seen.begin(), seen.end()});
}

}  // namespace

TEST_CASE("exact dispersion of the empty set is the whole cube") {
  const auto r = exact_dispersion(UnitPointSet(2, 2, {}));
  CHECK(r.volume == Rational(1));
  CHECK(r.witness.axis(0).lower == Rational(0));
  CHECK(r.witness.axis(0).upper == Rational(1));
  CHECK(r.witness.axis(1).upper == Rational(1));
}

TEST_CASE("one midpoint halves the cube") {
  const auto r = exact_dispersion(UnitPointSet(1, 2, {{1, 1}}));
  CHECK(r.volume == Rational(1, 2));
  // The lexicographically smallest maximizer is [0,1/2] x [0,1].
  CHECK(r.witness.axis(0).lower == Rational(0));
  CHECK(r.witness.axis(0).upper == Rational(1, 2));
  CHECK(r.witness.axis(1).lower == Rational(0));
  CHECK(r.witness.axis(1).upper == Rational(1));
}

TEST_CASE("full grids have dispersion exactly 2^-m") {
  for (auto [m, d] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    const auto r = exact_dispersion(full_grid(m, d));
    CHECK(r.volume == Rational(1, pow2(static_cast<unsigned>(m))));
  }
}

TEST_CASE("endpoint-supported search equals the naive grid search") {
  SplitMix64 rng(5);
  for (int t = 0; t < 25; ++t) {
    const int m = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(2));
    const int count = 1 + static_cast<int>(rng.below(6));
    const UnitPointSet p = random_points(rng, m, d, count);
    CHECK(exact_dispersion(p).volume == testing_oracles::naive_grid_dispersion(p, m + 1));
  }
  // One three-dimensional spot check (the naive oracle is expensive there).
  const UnitPointSet p3(2, 3, {{2, 2, 2}, {1, 3, 2}});
  CHECK(exact_dispersion(p3).volume == testing_oracles::naive_grid_dispersion(p3, 2));
}

TEST_CASE("adding a point never increases the dispersion") {
  SplitMix64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const int m = 2, d = 2;
    const UnitPointSet p = random_points(rng, m, d, 4);
    auto extended = p.numerators();
    std::vector<std::int32_t> extra{1 + static_cast<std::int32_t>(rng.below(3)),
                                    1 + static_cast<std::int32_t>(rng.below(3))};
    bool duplicate = false;
    for (const auto& x : extended) duplicate = duplicate || x == extra;
    if (duplicate) continue;
    extended.push_back(extra);
    CHECK(exact_dispersion(UnitPointSet(m, d, extended)).volume <= exact_dispersion(p).volume);
  }
}

TEST_CASE("oracle budgets are explicit errors") {
  CHECK_THROWS_AS(exact_dispersion(UnitPointSet(2, 5, {{1, 1, 1, 1, 1}})), BudgetError);
  Budgets tight;
  tight.oracle_max_candidates = 2;
  CHECK_THROWS_AS(exact_dispersion(full_grid(2, 2), tight), BudgetError);
}

TEST_CASE("witness interiors are empty and volumes match the witness") {
  SplitMix64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const UnitPointSet p = random_points(rng, 3, 2, 5);
    const auto r = exact_dispersion(p);
    CHECK(r.witness.volume() == r.volume);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::vector<Rational> x{p.coordinate(i, 0), p.coordinate(i, 1)};
      CHECK_FALSE(r.witness.interior_contains(x));
    }
  }
}

TEST_CASE("heuristic lower bound stays below the exact value") {
  const auto empty = dispersion_lower_bound(UnitPointSet(2, 2, {}), VerifyMode::sampled(1, 4));
  CHECK(empty.volume == Rational(1));

  const UnitPointSet center(1, 10, {std::vector<std::int32_t>(10, 1)});
  CHECK(dispersion_lower_bound(center, VerifyMode::sampled(3, 32)).volume >= Rational(1, 2));

  const auto grid = dispersion_lower_bound(full_grid(2, 2), VerifyMode::sampled(7, 1000));
  CHECK(grid.volume > 0);
  CHECK(grid.volume <= Rational(1, 4));

  SplitMix64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const UnitPointSet p = random_points(rng, 2, 2, 3);
    const auto heur = dispersion_lower_bound(p, VerifyMode::sampled(t, 64));
    CHECK(heur.volume <= exact_dispersion(p).volume);
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::vector<Rational> x{p.coordinate(i, 0), p.coordinate(i, 1)};
      CHECK_FALSE(heur.witness.interior_contains(x));
    }
  }
}

TEST_CASE("lower bound is deterministic in the seed") {
  const UnitPointSet p = full_grid(2, 2);
  const auto a = dispersion_lower_bound(p, VerifyMode::sampled(11, 50));
  const auto b = dispersion_lower_bound(p, VerifyMode::sampled(11, 50));
  CHECK(a.volume == b.volume);
  for (int axis = 0; axis < 2; ++axis) {
    CHECK(a.witness.axis(axis).lower == b.witness.axis(axis).lower);
    CHECK(a.witness.axis(axis).upper == b.witness.axis(axis).upper);
  }
}

TEST_CASE("condition (S): full grids pass, anything less fails when a_m = d") {
  CHECK(verify_condition_s(to_grid_points(full_grid(2, 2))));
  auto pts = to_grid_points(full_grid(2, 2)).points();
  pts.pop_back();
  CHECK_FALSE(verify_condition_s(GridPointSet(2, 2, pts)));
  CHECK_FALSE(verify_condition_s(GridPointSet(2, 2, {})));

  Budgets tight;
  tight.verify_checks = 3;
  CHECK_THROWS_AS(verify_condition_s(to_grid_points(full_grid(2, 2)), tight), BudgetError);
}

TEST_CASE("condition (S) soundness: certified sets have dispersion <= 2^-m") {
  for (auto [m, d] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    const UnitPointSet p = full_grid(m, d);
    if (verify_condition_s(to_grid_points(p)))
      CHECK(exact_dispersion(p).volume <= Rational(1, pow2(static_cast<unsigned>(m))));
  }
}

TEST_CASE("condition (S'): the one-dimensional ground truths") {
  CHECK(verify_condition_s_prime(GridPointSet(2, 1, {{1}, {2}, {3}})));
  // {2} misses the cell {3} of the class (s=1, p=3/4).
  CHECK_FALSE(verify_condition_s_prime(GridPointSet(2, 1, {{2}})));
  CHECK(verify_condition_s_prime(to_grid_points(full_grid(2, 2))));
  CHECK(verify_condition_s_prime(to_grid_points(full_grid(3, 2))));
}

TEST_CASE("condition (S) implies condition (S')") {
  for (auto [m, d] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    const GridPointSet t = to_grid_points(full_grid(m, d));
    REQUIRE(verify_condition_s(t));
    CHECK(verify_condition_s_prime(t));
  }
}

TEST_CASE("condition (S') sampled mode is deterministic and consistent") {
  const GridPointSet grid = to_grid_points(full_grid(2, 2));
  CHECK(verify_condition_s_prime(grid, VerifyMode::sampled(5, 500)));
  const GridPointSet sparse(2, 2, {{2, 2}});
  CHECK_FALSE(verify_condition_s_prime(sparse, VerifyMode::sampled(5, 500)));
  // Exhaustive agreement on the failing instance.
  CHECK_FALSE(verify_condition_s_prime(sparse));
}

TEST_CASE("condition (S') soundness: certified sets have dispersion <= 2^-m") {
  SplitMix64 rng(21);
  int certified = 0;
  for (int t = 0; t < 40; ++t) {
    const UnitPointSet p = random_points(rng, 2, 2, 5 + static_cast<int>(rng.below(4)));
    if (!verify_condition_s_prime(to_grid_points(p))) continue;
    ++certified;
    CHECK(exact_dispersion(p).volume <= Rational(1, 4));
  }
  CHECK(certified > 0);
}
