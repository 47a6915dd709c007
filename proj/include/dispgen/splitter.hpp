#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dispgen/budgets.hpp"
#include "dispgen/detail/subsets.hpp"
#include "dispgen/errors.hpp"
#include "dispgen/words.hpp"

namespace dispgen {

// A family of maps {1..n} -> {1..l} such that every k-subset of the domain is
// split perfectly by some member: the preimage sizes inside the subset differ
// by at most one across the l classes. For l >= k this is injectivity on the
// subset, the only case the constructions here need (l = k^2).
class SplitterFamily {
 public:
  // maps[j][i] = h_j(i+1), values 1-based in {1..range}.
  SplitterFamily(int domain, int arity, int range, std::vector<std::vector<std::uint16_t>> maps)
      : domain_(domain), arity_(arity), range_(range), maps_(std::move(maps)) {
    if (domain < 1 || arity < 1 || arity > domain) throw std::domain_error("need 1 <= k <= n");
    if (range < 1) throw std::domain_error("codomain must be nonempty");
    for (const auto& h : maps_) {
      if (static_cast<int>(h.size()) != domain)
        throw std::invalid_argument("map domain size mismatch");
      for (auto v : h)
        if (v < 1 || v > range) throw std::domain_error("map value outside codomain");
    }
  }

  int domain() const { return domain_; }  // n
  int arity() const { return arity_; }    // k
  int range() const { return range_; }    // l
  std::size_t size() const { return maps_.size(); }
  const std::vector<std::vector<std::uint16_t>>& maps() const { return maps_; }

 private:
  int domain_;
  int arity_;
  int range_;
  std::vector<std::vector<std::uint16_t>> maps_;
};

// Exhaustive perfect-splitting check over all k-subsets.
inline bool is_splitter(const SplitterFamily& a, const Budgets& budgets = {}) {
  const BigInt checks = detail::binomial(a.domain(), a.arity()) * BigInt(a.size());
  if (checks > budgets.verify_checks)
    throw BudgetError("verify_checks", checks.str(), budgets.verify_checks);
  if (a.size() == 0) return false;
  const int l = a.range(), k = a.arity();
  const int lo_size = k / l, hi_size = (k + l - 1) / l;
  return detail::all_subsets_satisfy(
      a.domain(), k, budgets.workers, [&](const std::vector<std::int32_t>& subset) {
        for (const auto& h : a.maps()) {
          thread_local std::vector<std::int32_t> count;
          count.assign(static_cast<std::size_t>(l), 0);
          bool good = true;
          for (std::int32_t i : subset) {
            const auto cls = static_cast<std::size_t>(h[static_cast<std::size_t>(i)] - 1);
            if (++count[cls] > hi_size) {
              good = false;
              break;
            }
          }
          if (good) {
            for (std::int32_t c : count)
              if (c != 0 && c < lo_size) {
                good = false;
                break;
              }
          }
          if (good) return true;
        }
        return false;
      });
}

namespace detail {

inline bool is_prime(std::int64_t q) {
  if (q < 2) return false;
  for (std::int64_t f = 2; f * f <= q; ++f)
    if (q % f == 0) return false;
  return true;
}

inline std::int64_t next_prime_at_least(std::int64_t q) {
  while (!is_prime(q)) ++q;
  return q;
}

inline std::int64_t pow_mod(std::int64_t base, std::int64_t e, std::int64_t mod) {
  std::int64_t r = 1 % mod;
  base %= mod;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * base % mod);
    base = static_cast<std::int64_t>(static_cast<__int128>(base) * base % mod);
    e >>= 1;
  }
  return r;
}

// Value at x of the degree-<K polynomial over F_q interpolating
// p(t) = digits[t] for t = 0..K-1 (systematic Reed-Solomon encoding).
inline std::int64_t interpolate_eval(const std::vector<std::int64_t>& digits, std::int64_t x,
                                     std::int64_t q) {
  const auto K = static_cast<std::int64_t>(digits.size());
  if (x < K) return digits[static_cast<std::size_t>(x)];
  std::int64_t acc = 0;
  for (std::int64_t t = 0; t < K; ++t) {
    std::int64_t num = 1, den = 1;
    for (std::int64_t u = 0; u < K; ++u) {
      if (u == t) continue;
      num = static_cast<std::int64_t>(static_cast<__int128>(num) * ((x - u) % q + q) % q);
      den = static_cast<std::int64_t>(static_cast<__int128>(den) * ((t - u) % q + q) % q);
    }
    const std::int64_t basis =
        static_cast<std::int64_t>(static_cast<__int128>(num) * pow_mod(den, q - 2, q) % q);
    acc = static_cast<std::int64_t>(
        (acc + static_cast<__int128>(digits[static_cast<std::size_t>(t)]) * basis) % q);
  }
  return acc;
}

}  // namespace detail

// (n, k, k^2)-splitter from a Reed-Solomon code over the smallest usable
// prime field q >= k^2. Index i is encoded as the base-q digits of i-1,
// interpolated as evaluations at 0..K-1, and map h_j reads coordinate j of
// the codeword reduced into {1..k^2}. The symbol reduction can merge
// codeword coordinates, so every family is certified by is_splitter before
// it is returned; on failure the block length L grows (more maps), and once
// L reaches q the next prime is tried. L starts at ceil(k^2 (K-1) / 2), the
// block length at which the un-reduced code has normalized distance at
// least 1 - 2/k^2.
inline SplitterFamily build_rs_splitter(int n, int k, const Budgets& budgets = {}) {
  if (k < 2) throw std::domain_error("splitter arity must be at least 2");
  if (n < k) throw std::domain_error("need n >= k");
  const int l = k * k;
  if (l > (1 << 15)) throw std::domain_error("splitter codomain out of range");

  if (n <= l) {
    // Every index fits a distinct class; one map suffices.
    std::vector<std::uint16_t> ident(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ident[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(i + 1);
    SplitterFamily family(n, k, l, {std::move(ident)});
    return family;
  }

  constexpr int kPrimeAttempts = 8;
  std::int64_t q = detail::next_prime_at_least(l);
  for (int attempt = 0; attempt < kPrimeAttempts; ++attempt, q = detail::next_prime_at_least(q + 1)) {
    int K = 2;
    {
      BigInt power = BigInt(q) * q;
      while (power < n) {
        power *= q;
        ++K;
      }
    }
    const std::int64_t start_L =
        std::min<std::int64_t>(q, std::max<std::int64_t>(1, (static_cast<std::int64_t>(l) * (K - 1) + 1) / 2));
    for (std::int64_t L = start_L; L <= q; ++L) {
      std::vector<std::vector<std::uint16_t>> maps(
          static_cast<std::size_t>(L), std::vector<std::uint16_t>(static_cast<std::size_t>(n)));
      for (int i = 0; i < n; ++i) {
        std::vector<std::int64_t> digits(static_cast<std::size_t>(K));
        std::int64_t rem = i;  // encodes index i+1
        for (int t = 0; t < K; ++t) {
          digits[static_cast<std::size_t>(t)] = rem % q;
          rem /= q;
        }
        for (std::int64_t j = 0; j < L; ++j) {
          const std::int64_t sym = detail::interpolate_eval(digits, j, q);
          maps[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
              static_cast<std::uint16_t>(sym % l + 1);
        }
      }
      SplitterFamily family(n, k, l, std::move(maps));
      if (is_splitter(family, budgets)) return family;
    }
  }
  throw std::runtime_error("splitter construction failed to certify for (n=" +
                           std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

// Pullback of every word along every map: (tau o h)(i) = tau[h(i)].
// Duplicates are removed keeping the first occurrence (word-major order).
inline WordSet compose(const WordSet& t, const SplitterFamily& a) {
  if (t.length() != a.range())
    throw std::invalid_argument("word length " + std::to_string(t.length()) +
                                " does not match the splitter codomain " +
                                std::to_string(a.range()));
  std::vector<Word> out;
  std::set<Word> seen;
  for (const auto& tau : t.words()) {
    for (const auto& h : a.maps()) {
      Word w(static_cast<std::size_t>(a.domain()));
      for (int i = 0; i < a.domain(); ++i)
        w[static_cast<std::size_t>(i)] = tau[static_cast<std::size_t>(h[static_cast<std::size_t>(i)] - 1)];
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  }
  return WordSet(a.domain(), t.alphabet(), std::move(out));
}

}  // namespace dispgen
