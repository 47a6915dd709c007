#include <catch2/catch_amalgamated.hpp>

#include "dispgen/splitter.hpp"
#include "dispgen/universal.hpp"
#include "oracles.hpp"

using namespace dispgen;

TEST_CASE("n = k admits the size-one identity family") {
  for (int k : {2, 3, 5}) {
    const SplitterFamily f = build_rs_splitter(k, k);
    CHECK(f.size() == 1);
    CHECK(f.range() == k * k);
    CHECK(is_splitter(f));
  }
}

TEST_CASE("a single constant map is not a splitter") {
  const SplitterFamily f(5, 2, 4, {std::vector<std::uint16_t>(5, 1)});
  CHECK_FALSE(is_splitter(f));
}

TEST_CASE("perfect splitting handles l < k via the +-1 rule") {
  // l = 2, k = 4: a perfect split puts exactly two elements in each class.
  const SplitterFamily balanced(4, 4, 2, {{1, 1, 2, 2}});
  CHECK(is_splitter(balanced));
  const SplitterFamily skewed(4, 4, 2, {{1, 1, 1, 2}});
  CHECK_FALSE(is_splitter(skewed));
}

TEST_CASE("Reed-Solomon splitters certify at the reference parameters") {
  for (auto [n, k] : {std::pair{9, 2}, {16, 2}, {27, 3}, {64, 3}}) {
    const SplitterFamily f = build_rs_splitter(n, k);
    CHECK(f.range() == k * k);
    CHECK(is_splitter(f));
    CHECK(f.size() <= static_cast<std::size_t>(2 * k * k));
  }
}

TEST_CASE("family size keeps pace with log n") {
  // K grows like log_q(n); sizes must stay within a small multiple of k^2 K.
  std::size_t last = 0;
  for (int n : {9, 81, 729, 6561}) {
    const SplitterFamily f = build_rs_splitter(n, 2);
    int order = 2;  // smallest prime >= 4 is 5; K = ceil(log_5 n) for these n
    BigInt power(25);
    while (power < n) {
      power *= 5;
      ++order;
    }
    CHECK(f.size() <= static_cast<std::size_t>(2 * 4 * order));
    CHECK(f.size() >= last);
    last = f.size();
  }
}

TEST_CASE("composition pulls a length-k^2 solution back to length n") {
  // Singleton (2,2,4,4) system solved on length 4, pulled through an
  // (9,2,4)-splitter, must solve the (2,2,9,4) problem.
  const RestrictionProblem small = universal_restriction_problem({4, 2, 2});
  const WordSet core = solve_greedy(small).words;
  REQUIRE(verify_solution(core, small));
  const SplitterFamily f = build_rs_splitter(9, 2);
  const WordSet pulled = compose(core, f);
  CHECK(pulled.length() == 9);
  CHECK(pulled.size() <= core.size() * f.size());
  const RestrictionProblem big = universal_restriction_problem({9, 2, 2});
  CHECK(verify_solution(pulled, big));
}

TEST_CASE("composition edge cases") {
  const SplitterFamily f = build_rs_splitter(6, 2);
  CHECK(compose(WordSet(4, 3, {}), f).size() == 0);
  const WordSet one(4, 3, {{0, 1, 2, 0}});
  const WordSet composed = compose(one, f);
  CHECK(composed.size() <= f.size());
  for (const auto& w : composed.words()) CHECK(w.size() == 6);
  CHECK_THROWS_AS(compose(WordSet(3, 3, {{0, 1, 2}}), f), std::invalid_argument);
}

TEST_CASE("composition soundness on random invariant systems") {
  SplitMix64 rng(99);
  int done = 0;
  while (done < 8) {
    auto problem = testing_oracles::random_invariant_problem(rng, 12, 3, 3);
    if (problem.arity() < 2) continue;
    const int l = problem.arity() * problem.arity();
    if (problem.length() <= l) continue;
    RestrictionProblem small(problem.alphabet(), problem.arity(), l, problem.sets());
    const WordSet core = solve_greedy(small).words;
    const SplitterFamily f = build_rs_splitter(problem.length(), problem.arity());
    CHECK(verify_solution(compose(core, f), problem));
    ++done;
  }
}

TEST_CASE("splitter input validation") {
  CHECK_THROWS_AS(build_rs_splitter(5, 1), std::domain_error);
  CHECK_THROWS_AS(build_rs_splitter(2, 3), std::domain_error);
}
