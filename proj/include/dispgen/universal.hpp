#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/detail/subsets.hpp"
#include "dispgen/errors.hpp"
#include "dispgen/restriction.hpp"
#include "dispgen/words.hpp"

namespace dispgen {

// An (n, k, b)-universal set attains all b^k patterns on every k-subset of
// its n positions; b = 2 is the classic (n, k)-universal set.
struct UniversalSpec {
  int length = 0;    // n
  int arity = 0;     // k
  int alphabet = 2;  // b

  void validate() const {
    if (arity < 1 || arity > length) throw std::domain_error("need 1 <= k <= n");
    if (alphabet < 2) throw std::domain_error("alphabet size must be at least 2");
  }
};

inline bool is_universal(const WordSet& t, const UniversalSpec& spec,
                         const Budgets& budgets = {}) {
  spec.validate();
  if (t.length() != spec.length || t.alphabet() != spec.alphabet)
    throw std::invalid_argument("word set shape does not match the spec");
  const BigInt patterns = ipow(BigInt(spec.alphabet), static_cast<unsigned>(spec.arity));
  const BigInt checks = detail::binomial(spec.length, spec.arity) * patterns;
  if (checks > budgets.verify_checks)
    throw BudgetError("verify_checks", checks.str(), budgets.verify_checks);
  const std::uint64_t want = patterns.convert_to<std::uint64_t>();
  if (t.size() < want) return false;

  const auto& words = t.words();
  const std::uint64_t b = static_cast<std::uint64_t>(spec.alphabet);
  return detail::all_subsets_satisfy(
      spec.length, spec.arity, budgets.workers,
      [&](const std::vector<std::int32_t>& subset) {
        thread_local std::vector<std::uint32_t> stamp;
        thread_local std::uint32_t generation = 0;
        if (stamp.size() < want) stamp.assign(want, 0);
        ++generation;
        std::uint64_t distinct = 0;
        for (const auto& w : words) {
          std::uint64_t code = 0;
          for (std::int32_t i : subset) code = code * b + w[static_cast<std::size_t>(i)];
          if (stamp[code] != generation) {
            stamp[code] = generation;
            if (++distinct == want) return true;
          }
        }
        return false;
      });
}

// Folds the top symbol b of an alphabet of size b+1 onto 0 and removes the
// duplicates this creates. Universality for (n, k, b+1) carries over to
// (n, k, b) with at most the same cardinality.
inline WordSet reduce_alphabet(const WordSet& t) {
  if (t.alphabet() < 3) throw std::domain_error("alphabet must have at least 3 symbols");
  const int folded = t.alphabet() - 1;
  std::vector<Word> out;
  std::set<Word> seen;
  for (auto w : t.words()) {
    for (auto& v : w)
      if (v == folded) v = 0;
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return WordSet(t.length(), folded, std::move(out));
}

// Reads consecutive m-bit blocks of a binary word as base-2 digits, first bit
// of each block most significant: an (mn, mk)-universal binary set becomes an
// (n, k, 2^m)-universal set of the same size.
inline WordSet group_digits(const WordSet& t, int m) {
  if (t.alphabet() != 2) throw std::domain_error("digit grouping expects a binary word set");
  if (m < 1 || m > 15) throw std::domain_error("block size out of range");
  if (t.length() % m != 0)
    throw std::invalid_argument("word length " + std::to_string(t.length()) +
                                " is not divisible by block size " + std::to_string(m));
  const int out_len = t.length() / m;
  std::vector<Word> out;
  out.reserve(t.size());
  for (const auto& w : t.words()) {
    Word g(static_cast<std::size_t>(out_len));
    for (int j = 0; j < out_len; ++j) {
      std::uint16_t v = 0;
      for (int r = 0; r < m; ++r)
        v = static_cast<std::uint16_t>((v << 1) | w[static_cast<std::size_t>(j * m + r)]);
      g[static_cast<std::size_t>(j)] = v;
    }
    out.push_back(std::move(g));
  }
  return WordSet(out_len, 1 << m, std::move(out));
}

enum class UniversalStrategy { direct_greedy, splitter_composed };

// The k-restriction problem whose solutions are exactly the universal sets:
// all b^k singleton demands.
inline RestrictionProblem universal_restriction_problem(const UniversalSpec& spec) {
  spec.validate();
  std::vector<RestrictionSet> sets;
  Word v(static_cast<std::size_t>(spec.arity), 0);
  for (;;) {
    sets.push_back(RestrictionSet::explicit_set(spec.arity, spec.alphabet, {v}));
    int i = spec.arity - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == spec.alphabet - 1) {
      v[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++v[static_cast<std::size_t>(i)];
  }
  return RestrictionProblem(spec.alphabet, spec.arity, spec.length, std::move(sets));
}

// Builds a certified (n, k, b)-universal set by delegating the singleton
// restriction problem to a solver, either directly on length n or through a
// splitter pullback from length k^2. The result is certified by is_universal
// whenever the check fits the verification budget; a failed certification is
// a logic error, not a return value.
WordSet build_universal(const UniversalSpec& spec,
                        UniversalStrategy strategy = UniversalStrategy::direct_greedy,
                        const Budgets& budgets = {}, bool randomized = false,
                        std::uint64_t seed = 0, std::uint64_t batch = 256);

}  // namespace dispgen

#include "dispgen/splitter.hpp"

namespace dispgen {

inline WordSet build_universal(const UniversalSpec& spec, UniversalStrategy strategy,
                               const Budgets& budgets, bool randomized, std::uint64_t seed,
                               std::uint64_t batch) {
  spec.validate();
  auto solve = [&](const RestrictionProblem& problem) {
    return randomized ? solve_randomized(problem, seed, batch, budgets).words
                      : solve_greedy(problem, budgets).words;
  };

  WordSet result = [&] {
    if (strategy == UniversalStrategy::direct_greedy) {
      return solve(universal_restriction_problem(spec));
    }
    const int small_n = spec.arity * spec.arity;
    UniversalSpec small = spec;
    small.length = small_n;
    const WordSet core = solve(universal_restriction_problem(small));
    const SplitterFamily family = build_rs_splitter(spec.length, spec.arity, budgets);
    return compose(core, family);
  }();

  const BigInt checks = detail::binomial(spec.length, spec.arity) *
                        ipow(BigInt(spec.alphabet), static_cast<unsigned>(spec.arity));
  if (checks <= budgets.verify_checks && !is_universal(result, spec, budgets))
    throw std::logic_error("constructed word set failed universality certification");
  return result;
}

}  // namespace dispgen
