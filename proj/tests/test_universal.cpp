#include <catch2/catch_amalgamated.hpp>

#include "dispgen/universal.hpp"
#include "oracles.hpp"

using namespace dispgen;

TEST_CASE("is_universal ground truths") {
  CHECK(is_universal(WordSet(1, 2, {{0}, {1}}), {1, 1, 2}));
  // Four words of length 3 carrying all patterns on every column pair.
  const WordSet parity(3, 2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  CHECK(is_universal(parity, {3, 2, 2}));
  // Too few words can never realize all b^k patterns.
  CHECK_FALSE(is_universal(WordSet(3, 2, {{0, 0, 0}, {1, 1, 1}, {0, 1, 0}}), {3, 2, 2}));
  Budgets tight;
  tight.verify_checks = 2;
  CHECK_THROWS_AS(is_universal(parity, {3, 2, 2}, tight), BudgetError);
}

TEST_CASE("reduce_alphabet folds the top symbol onto zero") {
  const WordSet t(2, 3, {{0, 0}, {1, 1}, {2, 2}});
  const WordSet r = reduce_alphabet(t);
  CHECK(r.alphabet() == 2);
  CHECK(r.words() == std::vector<Word>{{0, 0}, {1, 1}});

  const WordSet untouched(2, 3, {{0, 1}, {1, 0}});
  CHECK(reduce_alphabet(untouched).words() == untouched.words());
  CHECK_THROWS_AS(reduce_alphabet(WordSet(2, 2, {{0, 1}})), std::domain_error);
}

TEST_CASE("reduce_alphabet preserves universality and never grows") {
  // Brute-force (n, k, 3)-universal sets, reduced to alphabet 2.
  for (int n = 2; n <= 4; ++n) {
    const UniversalSpec wide{n, 2, 3};
    const WordSet t = build_universal(wide);
    REQUIRE(is_universal(t, wide));
    const WordSet r = reduce_alphabet(t);
    CHECK(r.size() <= t.size());
    CHECK(is_universal(r, {n, 2, 2}));
  }
}

TEST_CASE("group_digits reads big-endian blocks") {
  CHECK(group_digits(WordSet(4, 2, {{0, 1, 1, 0}}), 2).words() == std::vector<Word>{{1, 2}});
  CHECK(group_digits(WordSet(6, 2, {{1, 1, 1, 1, 1, 1}}), 3).words() == std::vector<Word>{{7, 7}});
  CHECK_THROWS_AS(group_digits(WordSet(5, 2, {{0, 0, 0, 0, 0}}), 2), std::invalid_argument);
  CHECK_THROWS_AS(group_digits(WordSet(4, 3, {{0, 1, 2, 0}}), 2), std::domain_error);
}

TEST_CASE("group_digits transfers universality and preserves cardinality") {
  const UniversalSpec binary{4, 2, 2};
  const WordSet t = build_universal(binary);
  REQUIRE(is_universal(t, binary));
  const WordSet g = group_digits(t, 2);
  CHECK(g.size() == t.size());
  CHECK(g.length() == 2);
  CHECK(g.alphabet() == 4);
  CHECK(is_universal(g, {2, 1, 4}));

  const UniversalSpec binary6{6, 2, 2};
  const WordSet t6 = build_universal(binary6);
  CHECK(is_universal(group_digits(t6, 2), {3, 1, 4}));
}

TEST_CASE("build_universal: smallest cases and the union-bound cap") {
  const WordSet two = build_universal({1, 1, 2});
  CHECK(two.size() == 2);

  const UniversalSpec spec{3, 2, 2};
  const WordSet t = build_universal(spec);
  CHECK(is_universal(t, spec));
  CHECK(t.size() <= 15);  // ceil(4 ln 36)

  // Exhaustive search: the minimum size of a (3,2,2)-universal set is 4.
  const auto min_size = testing_oracles::exhaustive_min_universal_size(
      3, 2, 2, 4, [&](const WordSet& candidate) { return is_universal(candidate, spec); });
  CHECK(min_size == 4);
}

TEST_CASE("build_universal is deterministic") {
  const UniversalSpec spec{5, 2, 3};
  CHECK(build_universal(spec).words() == build_universal(spec).words());
  const WordSet randomized = build_universal(spec, UniversalStrategy::direct_greedy, {}, true, 42);
  CHECK(randomized.words() ==
        build_universal(spec, UniversalStrategy::direct_greedy, {}, true, 42).words());
  CHECK(is_universal(randomized, spec));
}

TEST_CASE("splitter-composed construction certifies") {
  const UniversalSpec spec{9, 2, 2};
  const WordSet t = build_universal(spec, UniversalStrategy::splitter_composed);
  CHECK(is_universal(t, spec));
}
