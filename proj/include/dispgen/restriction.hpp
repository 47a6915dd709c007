#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/detail/subsets.hpp"
#include "dispgen/errors.hpp"
#include "dispgen/prng.hpp"
#include "dispgen/rational.hpp"
#include "dispgen/words.hpp"

namespace dispgen {

// One demand set over k positions: an explicit pattern list, an axis-aligned
// product of symbol ranges, or an opaque membership predicate with a size
// lower bound. Product ranges exist because the core-cell systems consist of
// nothing else and the solver exploits their O(1) counting.
class RestrictionSet {
 public:
  enum class Kind { explicit_patterns, product_range, predicate };

  static RestrictionSet explicit_set(int arity, int alphabet, std::vector<Word> patterns) {
    RestrictionSet s(Kind::explicit_patterns, arity, alphabet);
    std::set<Word> seen;
    for (auto& p : patterns) {
      if (static_cast<int>(p.size()) != arity)
        throw std::invalid_argument("pattern arity mismatch");
      for (auto v : p)
        if (v >= alphabet) throw std::domain_error("pattern symbol outside alphabet");
      if (seen.insert(p).second) s.patterns_.push_back(std::move(p));
    }
    if (s.patterns_.empty()) throw std::invalid_argument("restriction set must be nonempty");
    s.size_ = s.patterns_.size();
    return s;
  }

  // Inclusive per-position bounds [lo, hi].
  static RestrictionSet product_range(int arity, int alphabet,
                                      std::vector<std::pair<std::uint16_t, std::uint16_t>> ranges) {
    RestrictionSet s(Kind::product_range, arity, alphabet);
    if (static_cast<int>(ranges.size()) != arity)
      throw std::invalid_argument("range arity mismatch");
    std::uint64_t size = 1;
    for (auto [lo, hi] : ranges) {
      if (lo > hi || hi >= alphabet) throw std::domain_error("bad symbol range");
      size *= static_cast<std::uint64_t>(hi - lo + 1);
    }
    s.ranges_ = std::move(ranges);
    s.size_ = size;
    return s;
  }

  static RestrictionSet predicate(int arity, int alphabet,
                                  std::function<bool(const Word&)> member,
                                  std::uint64_t size_lower_bound) {
    if (size_lower_bound == 0)
      throw std::invalid_argument("predicate sets need a positive size lower bound");
    RestrictionSet s(Kind::predicate, arity, alphabet);
    s.member_ = std::move(member);
    s.size_ = size_lower_bound;
    return s;
  }

  Kind kind() const { return kind_; }
  int arity() const { return arity_; }
  int alphabet() const { return alphabet_; }

  // Exact cardinality for explicit/product sets; the caller-supplied lower
  // bound for predicates.
  std::uint64_t size() const { return size_; }

  bool contains(const Word& pattern) const {
    switch (kind_) {
      case Kind::explicit_patterns:
        return std::find(patterns_.begin(), patterns_.end(), pattern) != patterns_.end();
      case Kind::product_range:
        for (int i = 0; i < arity_; ++i) {
          const auto [lo, hi] = ranges_[static_cast<std::size_t>(i)];
          const auto v = pattern[static_cast<std::size_t>(i)];
          if (v < lo || v > hi) return false;
        }
        return true;
      case Kind::predicate:
        return member_(pattern);
    }
    return false;
  }

  // Expands to an explicit pattern list in lexicographic order; predicates
  // enumerate all alphabet^arity candidates, guarded by `budget`.
  std::vector<Word> materialize(std::uint64_t budget) const {
    if (kind_ == Kind::explicit_patterns) {
      auto sorted = patterns_;
      std::sort(sorted.begin(), sorted.end());
      return sorted;
    }
    BigInt space = ipow(BigInt(alphabet_), static_cast<unsigned>(arity_));
    if (space > budget)
      throw BudgetError("set_expansion", space.str(), budget);
    std::vector<Word> out;
    Word w(static_cast<std::size_t>(arity_), 0);
    for (;;) {
      if (contains(w)) out.push_back(w);
      int i = arity_ - 1;
      while (i >= 0 && w[static_cast<std::size_t>(i)] == alphabet_ - 1) {
        w[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++w[static_cast<std::size_t>(i)];
    }
    if (out.empty()) throw std::invalid_argument("predicate set is empty");
    return out;
  }

  const std::vector<Word>& patterns() const { return patterns_; }
  const std::vector<std::pair<std::uint16_t, std::uint16_t>>& ranges() const { return ranges_; }

 private:
  RestrictionSet(Kind kind, int arity, int alphabet)
      : kind_(kind), arity_(arity), alphabet_(alphabet) {
    if (arity < 1) throw std::domain_error("arity must be positive");
    if (alphabet < 2 || alphabet > 1 << 15) throw std::domain_error("alphabet size out of range");
  }

  Kind kind_;
  int arity_;
  int alphabet_;
  std::uint64_t size_ = 0;
  std::vector<Word> patterns_;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> ranges_;
  std::function<bool(const Word&)> member_;
};

// The (b, k, n, M) data: demand sets C_1..C_M over {0..b-1}^k, to be hit on
// every k-subset of n positions. The collection is assumed invariant under
// permutations of the k positions (caller-asserted; see
// spot_check_permutation_invariance).
class RestrictionProblem {
 public:
  RestrictionProblem(int alphabet, int arity, int length, std::vector<RestrictionSet> sets)
      : alphabet_(alphabet), arity_(arity), length_(length), sets_(std::move(sets)) {
    if (arity < 1 || arity > length) throw std::domain_error("need 1 <= k <= n");
    if (alphabet < 2) throw std::domain_error("alphabet size must be at least 2");
    if (ipow(BigInt(alphabet), static_cast<unsigned>(arity) + 1) > (BigInt(1) << 62))
      throw BudgetError("pattern_weight",
                        "b^(k+1) = " + ipow(BigInt(alphabet), static_cast<unsigned>(arity) + 1).str(),
                        std::uint64_t{1} << 62);
    min_set_size_ = UINT64_MAX;
    for (const auto& s : sets_) {
      if (s.arity() != arity || s.alphabet() != alphabet)
        throw std::invalid_argument("restriction set shape mismatch");
      min_set_size_ = std::min(min_set_size_, s.size());
    }
    if (sets_.empty()) min_set_size_ = 0;
  }

  int alphabet() const { return alphabet_; }  // b
  int arity() const { return arity_; }        // k
  int length() const { return length_; }      // n
  const std::vector<RestrictionSet>& sets() const { return sets_; }
  std::uint64_t set_count() const { return sets_.size(); }  // M
  std::uint64_t min_set_size() const { return min_set_size_; }  // c

  BigInt constraint_count() const {
    return detail::binomial(length_, arity_) * BigInt(sets_.size());
  }

 private:
  int alphabet_;
  int arity_;
  int length_;
  std::vector<RestrictionSet> sets_;
  std::uint64_t min_set_size_;
};

// ceil((b^k / c) * ln(n^k * M)): the size at which independent uniform words
// succeed with positive probability. Natural logarithm; exact evaluation.
inline std::uint64_t union_bound_size(const RestrictionProblem& p) {
  if (p.set_count() == 0) return 0;
  const Rational coeff(ipow(BigInt(p.alphabet()), static_cast<unsigned>(p.arity())),
                       BigInt(p.min_set_size()));
  const BigInt arg =
      ipow(BigInt(p.length()), static_cast<unsigned>(p.arity())) * BigInt(p.set_count());
  return ceil_mul_ln(coeff, arg);
}

struct SolveStats {
  std::uint64_t constraint_count = 0;
  std::vector<std::uint64_t> covered_per_word;  // strictly positive entries
  std::uint64_t words_drawn = 0;                // randomized solver only
};

struct RestrictionSolution {
  WordSet words;
  SolveStats stats;
};

namespace detail {

struct PreparedSet {
  bool is_product = false;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> ranges;
  std::vector<Word> patterns;
  std::int64_t full_count = 0;  // |C|
};

inline std::vector<PreparedSet> prepare_sets(const RestrictionProblem& p, const Budgets& budgets) {
  std::vector<PreparedSet> out;
  out.reserve(p.sets().size());
  for (const auto& s : p.sets()) {
    PreparedSet ps;
    if (s.kind() == RestrictionSet::Kind::product_range) {
      ps.is_product = true;
      ps.ranges = s.ranges();
      ps.full_count = static_cast<std::int64_t>(s.size());
    } else {
      ps.patterns = s.materialize(budgets.set_expansion);
      ps.full_count = static_cast<std::int64_t>(ps.patterns.size());
      if (ps.patterns.size() == 1) {
        // A singleton is a width-1 product range; the product path needs no
        // per-word pattern bookkeeping.
        ps.is_product = true;
        for (auto v : ps.patterns.front()) ps.ranges.emplace_back(v, v);
        ps.patterns.clear();
      }
    }
    out.push_back(std::move(ps));
  }
  return out;
}

inline bool prepared_contains(const PreparedSet& ps, const Word& word,
                              const std::vector<std::int32_t>& subset) {
  if (ps.is_product) {
    for (std::size_t t = 0; t < subset.size(); ++t) {
      const auto v = word[static_cast<std::size_t>(subset[t])];
      if (v < ps.ranges[t].first || v > ps.ranges[t].second) return false;
    }
    return true;
  }
  for (const auto& pat : ps.patterns) {
    bool match = true;
    for (std::size_t t = 0; t < subset.size(); ++t) {
      if (pat[t] != word[static_cast<std::size_t>(subset[t])]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

inline std::uint64_t checked_constraint_count(const RestrictionProblem& p,
                                              std::uint64_t limit, const char* budget_name) {
  const BigInt count = p.constraint_count();
  if (count > limit) throw BudgetError(budget_name, count.str(), limit);
  return count.convert_to<std::uint64_t>();
}

}  // namespace detail

// Derandomized greedy solver: words are emitted one at a time; every symbol
// of the next word is fixed to the value maximizing the expected number of
// still-uncovered constraints the finished word would satisfy under uniform
// completion (ties to the smallest symbol). Each finished word therefore
// covers at least a c/b^k fraction of what is left, which keeps the output
// within union_bound_size(p). All bookkeeping is exact 64-bit integer
// arithmetic scaled by b^k, so the output is bit-reproducible.
inline RestrictionSolution solve_greedy(const RestrictionProblem& p, const Budgets& budgets = {}) {
  const int n = p.length(), k = p.arity(), b = p.alphabet();
  const std::uint64_t constraint_count =
      detail::checked_constraint_count(p, budgets.solver_constraints, "solver_constraints");
  const std::uint64_t m_sets = p.set_count();
  const auto prepared = detail::prepare_sets(p, budgets);

  // Weight sums must stay inside int64: sum over constraints of b^(k+1).
  if (m_sets > 0 &&
      ipow(BigInt(b), static_cast<unsigned>(k) + 1) * constraint_count > (BigInt(1) << 62))
    throw BudgetError("solver_weight",
                      (ipow(BigInt(b), static_cast<unsigned>(k) + 1) * constraint_count).str(),
                      std::uint64_t{1} << 62);

  SolveStats stats;
  stats.constraint_count = constraint_count;
  if (constraint_count == 0)
    return {WordSet(n, b, {}), std::move(stats)};

  std::vector<std::int64_t> pow_b(static_cast<std::size_t>(k) + 2, 1);
  for (std::size_t i = 1; i < pow_b.size(); ++i) pow_b[i] = pow_b[i - 1] * b;

  // Subsets in lexicographic order; constraints are subset-major, set-minor.
  std::vector<std::vector<std::int32_t>> subsets;
  {
    std::vector<std::int32_t> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    do {
      subsets.push_back(c);
    } while (detail::next_combination(c, n));
  }

  const std::uint64_t num_constraints = subsets.size() * m_sets;
  std::vector<std::uint32_t> subset_of(num_constraints), set_of(num_constraints);
  for (std::uint64_t s = 0, c = 0; s < subsets.size(); ++s)
    for (std::uint64_t j = 0; j < m_sets; ++j, ++c) {
      subset_of[c] = static_cast<std::uint32_t>(s);
      set_of[c] = static_cast<std::uint32_t>(j);
    }

  struct Touch {
    std::uint32_t constraint;
    std::uint16_t pos;  // index of the coordinate inside the sorted subset
  };
  std::vector<std::vector<Touch>> by_coord(static_cast<std::size_t>(n));
  for (std::uint64_t c = 0; c < num_constraints; ++c) {
    const auto& subset = subsets[subset_of[c]];
    for (std::size_t t = 0; t < subset.size(); ++t)
      by_coord[static_cast<std::size_t>(subset[t])].push_back(
          {static_cast<std::uint32_t>(c), static_cast<std::uint16_t>(t)});
  }

  std::vector<char> covered(num_constraints, 0);
  std::vector<std::int64_t> weight(num_constraints, 0);
  std::vector<std::uint8_t> fixed_cnt(num_constraints, 0);
  // Per-word alive pattern lists for non-product sets.
  std::vector<std::vector<std::uint32_t>> alive(num_constraints);
  std::vector<std::uint32_t> uncovered(num_constraints);
  for (std::uint64_t c = 0; c < num_constraints; ++c) uncovered[c] = static_cast<std::uint32_t>(c);

  const std::uint64_t size_cap = union_bound_size(p);
  std::uint64_t covered_total = 0, last_compaction = 0;
  std::vector<Word> words;
  std::vector<std::int64_t> buckets(static_cast<std::size_t>(b));

  while (!uncovered.empty()) {
    if (words.size() >= size_cap && size_cap > 0)
      throw std::logic_error("greedy solver exceeded the union-bound size cap");
    for (std::uint32_t c : uncovered) {
      const auto& ps = prepared[set_of[c]];
      fixed_cnt[c] = 0;
      if (ps.is_product) {
        weight[c] = ps.full_count;
      } else {
        weight[c] = ps.full_count;
        auto& al = alive[c];
        al.resize(ps.patterns.size());
        for (std::uint32_t t = 0; t < al.size(); ++t) al[t] = t;
      }
    }

    Word word(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      std::fill(buckets.begin(), buckets.end(), 0);
      for (const Touch& touch : by_coord[static_cast<std::size_t>(i)]) {
        const std::uint32_t c = touch.constraint;
        if (covered[c] || weight[c] == 0) continue;
        const auto& ps = prepared[set_of[c]];
        if (ps.is_product) {
          const auto [lo, hi] = ps.ranges[touch.pos];
          const std::int64_t share = weight[c] / (hi - lo + 1) * b;
          for (int v = lo; v <= hi; ++v) buckets[static_cast<std::size_t>(v)] += share;
        } else {
          const std::int64_t mult = pow_b[static_cast<std::size_t>(fixed_cnt[c]) + 1];
          for (std::uint32_t t : alive[c]) buckets[ps.patterns[t][touch.pos]] += mult;
        }
      }
      int best_v = 0;
      for (int v = 1; v < b; ++v)
        if (buckets[static_cast<std::size_t>(v)] > buckets[static_cast<std::size_t>(best_v)]) best_v = v;
      word[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(best_v);

      for (const Touch& touch : by_coord[static_cast<std::size_t>(i)]) {
        const std::uint32_t c = touch.constraint;
        if (covered[c] || weight[c] == 0) continue;
        const auto& ps = prepared[set_of[c]];
        if (ps.is_product) {
          const auto [lo, hi] = ps.ranges[touch.pos];
          if (best_v < lo || best_v > hi) {
            weight[c] = 0;
          } else {
            weight[c] = weight[c] / (hi - lo + 1) * b;
            ++fixed_cnt[c];
          }
        } else {
          auto& al = alive[c];
          std::size_t keep = 0;
          for (std::uint32_t t : al)
            if (ps.patterns[t][touch.pos] == best_v) al[keep++] = t;
          al.resize(keep);
          ++fixed_cnt[c];
          weight[c] = keep == 0 ? 0
                                : static_cast<std::int64_t>(keep) *
                                      pow_b[static_cast<std::size_t>(fixed_cnt[c])];
        }
      }
    }

    std::uint64_t newly = 0;
    for (std::size_t idx = uncovered.size(); idx-- > 0;) {
      const std::uint32_t c = uncovered[idx];
      if (weight[c] > 0) {
        covered[c] = 1;
        ++newly;
        uncovered[idx] = uncovered.back();
        uncovered.pop_back();
      }
    }
    if (newly == 0)
      throw std::logic_error("greedy word covered nothing; conditional expectations are broken");
    covered_total += newly;
    stats.covered_per_word.push_back(newly);
    words.push_back(std::move(word));

    // Keep adjacency lists within a constant factor of the live constraints.
    if (covered_total - last_compaction >= std::max<std::uint64_t>(256, uncovered.size())) {
      for (auto& list : by_coord) {
        std::size_t keep = 0;
        for (const Touch& touch : list)
          if (!covered[touch.constraint]) list[keep++] = touch;
        list.resize(keep);
      }
      last_compaction = covered_total;
    }
  }
  return {WordSet(n, b, std::move(words)), std::move(stats)};
}

// Seeded randomized construction: uniform words from SplitMix64, coverage
// tracked word by word, returns the distinct words among the first covering
// prefix. Soundness never depends on luck because coverage is verified as
// part of the construction.
inline RestrictionSolution solve_randomized(const RestrictionProblem& p, std::uint64_t seed,
                                            std::uint64_t batch, const Budgets& budgets = {}) {
  if (batch == 0) throw std::domain_error("batch size must be positive");
  const int n = p.length(), b = p.alphabet();
  const std::uint64_t constraint_count =
      detail::checked_constraint_count(p, budgets.solver_constraints, "solver_constraints");
  const auto prepared = detail::prepare_sets(p, budgets);

  SolveStats stats;
  stats.constraint_count = constraint_count;
  if (constraint_count == 0)
    return {WordSet(n, b, {}), std::move(stats)};

  struct Open {
    std::vector<std::int32_t> subset;
    std::uint32_t set;
  };
  std::vector<Open> open;
  {
    std::vector<std::int32_t> c(static_cast<std::size_t>(p.arity()));
    for (int i = 0; i < p.arity(); ++i) c[static_cast<std::size_t>(i)] = i;
    do {
      for (std::uint32_t j = 0; j < p.set_count(); ++j) open.push_back({c, j});
    } while (detail::next_combination(c, n));
  }

  constexpr std::uint64_t kRetryCap = 64;
  SplitMix64 rng(seed);
  std::vector<Word> words;
  std::set<Word> seen;
  for (std::uint64_t round = 0; round < kRetryCap; ++round) {
    for (std::uint64_t t = 0; t < batch; ++t) {
      Word w(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i)] =
            static_cast<std::uint16_t>(rng.below(static_cast<std::uint64_t>(b)));
      ++stats.words_drawn;
      std::uint64_t newly = 0;
      for (std::size_t idx = open.size(); idx-- > 0;) {
        if (detail::prepared_contains(prepared[open[idx].set], w, open[idx].subset)) {
          ++newly;
          if (idx + 1 != open.size()) open[idx] = std::move(open.back());
          open.pop_back();
        }
      }
      if (newly > 0 && seen.insert(w).second) {
        stats.covered_per_word.push_back(newly);
        words.push_back(std::move(w));
      }
      if (open.empty())
        return {WordSet(n, b, std::move(words)), std::move(stats)};
    }
  }
  throw std::runtime_error("randomized solver: retry cap of " + std::to_string(kRetryCap) +
                           " batches exceeded with " + std::to_string(open.size()) +
                           " constraints uncovered");
}

// Exhaustive check of every (subset, set) demand.
inline bool verify_solution(const WordSet& candidate, const RestrictionProblem& p,
                            const Budgets& budgets = {}) {
  if (candidate.length() != p.length() || candidate.alphabet() != p.alphabet())
    throw std::invalid_argument("candidate shape does not match the problem");
  detail::checked_constraint_count(p, budgets.verify_checks, "verify_checks");
  if (p.set_count() == 0) return true;
  if (candidate.size() == 0) return false;
  const auto prepared = detail::prepare_sets(p, budgets);
  const int k = p.arity(), b = p.alphabet();

  BigInt space = ipow(BigInt(b), static_cast<unsigned>(k));
  const bool mask_path = space <= 64;
  std::vector<std::uint64_t> set_masks;
  std::uint64_t full_mask = 0;
  if (mask_path) {
    const auto patterns_of = [&](const detail::PreparedSet& ps) {
      std::vector<Word> pats;
      if (ps.is_product) {
        Word w(static_cast<std::size_t>(k));
        std::function<void(int)> rec = [&](int i) {
          if (i == k) {
            pats.push_back(w);
            return;
          }
          for (int v = ps.ranges[static_cast<std::size_t>(i)].first;
               v <= ps.ranges[static_cast<std::size_t>(i)].second; ++v) {
            w[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(v);
            rec(i + 1);
          }
        };
        rec(0);
      } else {
        pats = ps.patterns;
      }
      return pats;
    };
    for (const auto& ps : prepared) {
      std::uint64_t mask = 0;
      for (const auto& pat : patterns_of(ps)) {
        std::uint64_t code = 0;
        for (auto v : pat) code = code * static_cast<std::uint64_t>(b) + v;
        mask |= std::uint64_t{1} << code;
      }
      set_masks.push_back(mask);
    }
    full_mask = space == 64 ? ~std::uint64_t{0}
                            : (std::uint64_t{1} << space.convert_to<unsigned>()) - 1;
  }

  const auto& words = candidate.words();
  return detail::all_subsets_satisfy(
      p.length(), k, budgets.workers, [&](const std::vector<std::int32_t>& subset) {
        if (mask_path) {
          std::uint64_t realized = 0;
          for (const auto& w : words) {
            std::uint64_t code = 0;
            for (std::int32_t i : subset)
              code = code * static_cast<std::uint64_t>(b) + w[static_cast<std::size_t>(i)];
            realized |= std::uint64_t{1} << code;
            if (realized == full_mask) break;
          }
          for (std::uint64_t mask : set_masks)
            if ((mask & realized) == 0) return false;
          return true;
        }
        for (const auto& ps : prepared) {
          bool hit = false;
          for (const auto& w : words)
            if (detail::prepared_contains(ps, w, subset)) {
              hit = true;
              break;
            }
          if (!hit) return false;
        }
        return true;
      });
}

// Samples position permutations of explicit/product sets and looks for the
// permuted set in the collection. The engine never relies on invariance, so
// a spot check (rather than structural enforcement) is all the solver asks
// of its callers. Predicate sets are skipped.
inline bool spot_check_permutation_invariance(const RestrictionProblem& p, std::uint64_t seed,
                                              int samples = 64) {
  if (p.arity() < 2 || p.set_count() == 0) return true;
  SplitMix64 rng(seed);
  auto canonical = [&](const RestrictionSet& s,
                       const std::vector<std::size_t>& perm) -> std::optional<std::vector<Word>> {
    switch (s.kind()) {
      case RestrictionSet::Kind::predicate:
        return std::nullopt;
      case RestrictionSet::Kind::product_range: {
        std::vector<Word> out;
        Word r;
        for (std::size_t t = 0; t < perm.size(); ++t) {
          r.push_back(s.ranges()[perm[t]].first);
          r.push_back(s.ranges()[perm[t]].second);
        }
        out.push_back(std::move(r));
        return out;
      }
      case RestrictionSet::Kind::explicit_patterns: {
        std::vector<Word> pats;
        for (const auto& pat : s.patterns()) {
          Word q(pat.size());
          for (std::size_t t = 0; t < perm.size(); ++t) q[t] = pat[perm[t]];
          pats.push_back(std::move(q));
        }
        std::sort(pats.begin(), pats.end());
        return pats;
      }
    }
    return std::nullopt;
  };

  std::vector<std::size_t> identity(static_cast<std::size_t>(p.arity()));
  for (std::size_t t = 0; t < identity.size(); ++t) identity[t] = t;

  for (int s = 0; s < samples; ++s) {
    const auto j = rng.below(p.set_count());
    auto perm = identity;
    const auto a = rng.below(perm.size());
    const auto b = rng.below(perm.size());
    std::swap(perm[a], perm[b]);
    const auto permuted = canonical(p.sets()[static_cast<std::size_t>(j)], perm);
    if (!permuted) continue;
    bool found = false;
    for (const auto& other : p.sets()) {
      const auto base = canonical(other, identity);
      if (base && *base == *permuted) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace dispgen
