#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dispgen {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

inline BigInt ipow(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "a/b", a plain integer, or a finite decimal like "0.125"; exact.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) fail();
  const auto slash = text.find('/');
  try {
    if (slash != std::string_view::npos) {
      BigInt num(std::string(text.substr(0, slash)));
      BigInt den(std::string(text.substr(slash + 1)));
      if (den == 0) fail();
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt(std::string(text)));
    std::string head(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.empty()) fail();
    for (char c : frac)
      if (c < '0' || c > '9') fail();
    const bool negative = !head.empty() && head[0] == '-';
    if (head.empty() || head == "-" || head == "+") head += '0';
    BigInt scaled = BigInt(head + frac);
    if (negative && head == "-0") scaled = -BigInt(frac);
    return Rational(scaled, ipow(BigInt(10), static_cast<unsigned>(frac.size())));
  } catch (const std::runtime_error&) {
    fail();
  }
  return Rational();  // unreachable
}

inline BigInt floor_rational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline BigInt ceil_rational(const Rational& r) {
  BigInt f = floor_rational(r);
  return f * denominator(r) == numerator(r) ? f : f + 1;
}

// log2(n) when n is an exact power of two.
inline std::optional<int> exact_log2(const BigInt& n) {
  if (n <= 0) return std::nullopt;
  const unsigned bits = boost::multiprecision::msb(n);  // floor(log2 n)
  if (n == pow2(bits)) return static_cast<int>(bits);
  return std::nullopt;
}

inline std::optional<Rational> exact_log2(const Rational& x) {
  // log2 of a positive rational is rational only when it is an integer.
  auto n = exact_log2(numerator(x));
  auto d = exact_log2(denominator(x));
  if (n && d) return Rational(*n - *d);
  return std::nullopt;
}

struct Log2Enclosure {
  Rational lo, hi;  // lo <= log2(x) <= hi
};

namespace detail {

// Fractional log2 digits of y = num/den in [1, 2) by repeated squaring on a
// fixed-point mantissa. round_up selects the rounding direction of every
// intermediate step, which keeps the emitted partial sum on one side of the
// true value regardless of the working precision.
inline Rational log2_fraction(const BigInt& num, const BigInt& den, int frac_bits,
                              bool round_up) {
  const int prec = frac_bits + 56;
  const BigInt one = pow2(static_cast<unsigned>(prec));
  BigInt mant = (num << prec) / den;
  if (round_up && mant * den != (num << prec)) ++mant;
  BigInt bits = 0;
  for (int i = 0; i < frac_bits; ++i) {
    BigInt sq = mant * mant;
    mant = sq >> prec;
    if (round_up && (mant << prec) != sq) ++mant;
    bits <<= 1;
    if (mant >= (one << 1)) {
      mant >>= 1;
      bits |= 1;
    }
  }
  return Rational(bits, pow2(static_cast<unsigned>(frac_bits)));
}

}  // namespace detail

// Dyadic enclosure of log2(x) for x > 0, about 2^-frac_bits wide.
inline Log2Enclosure log2_enclosure(const Rational& x, int frac_bits = 48) {
  if (x <= 0) throw std::domain_error("log2 of a non-positive value");
  if (auto e = exact_log2(x)) return {*e, *e};
  // Split off the integer part k so that x / 2^k lies in [1, 2).
  BigInt num = numerator(x), den = denominator(x);
  long k = static_cast<long>(boost::multiprecision::msb(num)) -
           static_cast<long>(boost::multiprecision::msb(den));
  BigInt n2 = num, d2 = den;
  if (k > 0)
    d2 <<= static_cast<unsigned>(k);
  else if (k < 0)
    n2 <<= static_cast<unsigned>(-k);
  if (n2 < d2) {
    --k;
    n2 <<= 1;
  }
  const Rational lo = Rational(k) + detail::log2_fraction(n2, d2, frac_bits, false);
  const Rational hi = Rational(k) + detail::log2_fraction(n2, d2, frac_bits, true) +
                      Rational(1, pow2(static_cast<unsigned>(frac_bits)));
  return {lo, hi};
}

namespace detail {

// ln 2 to 128 fractional bits, floor-rounded.
inline const BigInt& ln2_mantissa_128() {
  static const BigInt v("0xB17217F7D1CF79ABC9E3B39803F2F6AF");
  return v;
}

}  // namespace detail

// Smallest integer >= coeff * ln(arg) for coeff >= 0 and integer arg >= 1.
// Evaluated from certified enclosures, so the result is exact and identical
// on every platform. For integer arg >= 2, coeff * ln(arg) is irrational
// (coeff > 0), so a fine enough enclosure always decides the ceiling.
inline BigInt ceil_mul_ln_big(const Rational& coeff, const BigInt& arg) {
  if (coeff < 0) throw std::domain_error("ceil_mul_ln: negative coefficient");
  if (arg < 1) throw std::domain_error("ceil_mul_ln: argument below 1");
  if (coeff == 0 || arg == 1) return 0;
  const Rational ln2_lo(detail::ln2_mantissa_128(), pow2(128));
  const Rational ln2_hi(detail::ln2_mantissa_128() + 1, pow2(128));
  for (int frac_bits = 48; frac_bits <= 384; frac_bits *= 2) {
    const Log2Enclosure l = log2_enclosure(Rational(arg), frac_bits);
    const BigInt lo = ceil_rational(coeff * l.lo * ln2_lo);
    const BigInt hi = ceil_rational(coeff * l.hi * ln2_hi);
    if (lo == hi) return lo;
  }
  throw std::logic_error("ceil_mul_ln: enclosure failed to converge");
}

inline std::uint64_t ceil_mul_ln(const Rational& coeff, const BigInt& arg) {
  const BigInt r = ceil_mul_ln_big(coeff, arg);
  if (r > BigInt(UINT64_MAX)) throw std::overflow_error("ceil_mul_ln: result exceeds 64 bits");
  return r.convert_to<std::uint64_t>();
}

}  // namespace dispgen
