#pragma once

#include <string>

#include "dispgen/core.hpp"
#include "dispgen/rational.hpp"

namespace dispgen {

// Size record of the order-6 upper bound: C * ((1+log2(1/eps))/eps)^6 * log(d*)
// with d* = max(d, 2/eps). The constant C is not known, so the bound is kept
// symbolic; only the d* and the rendered expression are materialized.
struct SizeShape {
  Rational d_star;
  std::string expression;
};

struct BoundsReport {
  Rational epsilon;
  int dim = 0;

  // log2(d) / (8 eps); rounded down when log2(d) is irrational.
  Rational lower_bound;
  // 2^7 * log2(d) * (1 + log2(1/eps))^2 / eps^2; rounded up when inexact.
  Rational uv_upper;
  // (2d)^e with e = ceil(log2(1/eps)); exact exponent when 1/eps is a power
  // of two, otherwise a weaker but still valid upper bound.
  Rational sparse_grid;
  bool sparse_grid_exponent_exact = false;

  // True iff both log2(d) and log2(1/eps) are integers, which makes
  // lower_bound and uv_upper exact values of their formulas.
  bool exact = false;

  SizeShape order6_shape;
  std::string log_factor_note;  // unspecified-constant caveat
};

inline BoundsReport theoretical_bounds(const Rational& epsilon, int dim) {
  if (epsilon <= 0 || epsilon >= Rational(1, 2))
    throw std::domain_error("epsilon must lie in (0, 1/2), got " + to_string(epsilon));
  if (dim < 2) throw std::domain_error("dimension must be at least 2");

  BoundsReport r;
  r.epsilon = epsilon;
  r.dim = dim;

  const auto log2_d_exact = exact_log2(BigInt(dim));
  const auto log2_inv_eps_exact = exact_log2(Rational(1) / epsilon);
  r.exact = log2_d_exact.has_value() && log2_inv_eps_exact.has_value() &&
            *log2_inv_eps_exact >= 0;

  // Directional log2(d): down for the lower bound, up for the upper bound.
  Rational log2_d_lo, log2_d_hi;
  if (log2_d_exact) {
    log2_d_lo = log2_d_hi = Rational(*log2_d_exact);
  } else {
    const auto enc = log2_enclosure(Rational(dim));
    log2_d_lo = enc.lo;
    log2_d_hi = enc.hi;
  }

  Rational log2_inv_eps_hi;
  if (log2_inv_eps_exact) {
    log2_inv_eps_hi = *log2_inv_eps_exact;
  } else {
    log2_inv_eps_hi = log2_enclosure(Rational(1) / epsilon).hi;
  }

  r.lower_bound = log2_d_lo / (8 * epsilon);
  {
    const Rational one_plus = 1 + log2_inv_eps_hi;
    r.uv_upper = Rational(128) * log2_d_hi * one_plus * one_plus / (epsilon * epsilon);
  }

  // Sparse-grid upper bound (2d)^log2(1/eps). Rounding the exponent up to an
  // integer keeps it a valid bound since 2d > 1, and keeps the value rational.
  {
    const BigInt e = ceil_rational(log2_inv_eps_exact
                                       ? Rational(*log2_inv_eps_exact)
                                       : log2_enclosure(Rational(1) / epsilon).hi);
    const unsigned eu = e <= 0 ? 0u : e.convert_to<unsigned>();
    r.sparse_grid = Rational(ipow(BigInt(2) * dim, eu));
    r.sparse_grid_exponent_exact = log2_inv_eps_exact.has_value();
  }

  {
    const Rational two_over_eps = Rational(2) / epsilon;
    r.order6_shape.d_star = std::max(Rational(dim), two_over_eps);
    r.order6_shape.expression =
        "C * ((1 + log2(1/" + to_string(epsilon) + ")) / " + to_string(epsilon) +
        ")^6 * log(" + to_string(r.order6_shape.d_star) + "), constant C unspecified";
  }
  r.log_factor_note =
      "universal-set route size: c_eps * log(d) with c_eps unspecified "
      "(super-exponential in 1/eps)";
  return r;
}

}  // namespace dispgen
