#pragma once

// Extended-precision special functions and Gauss quadrature.
//
// All functions are pure; results carry roughly ctx.bits correct bits.
// Each call raises the working precision by PrecisionCtx::kGuardBits (and
// more where cancellation is known, e.g. the Bessel power series) for the
// duration of the call.

#include <vector>

#include "hardedge/real.hpp"

namespace hardedge::specfun {

/// log Gamma(x), x > 0.
Real log_gamma(const Real& x, const PrecisionCtx& ctx);

/// log G(z) for the Barnes G-function, z > 0.
///
/// Shifts z upward with G(z+1) = Gamma(z) G(z) until it passes
/// barnes_shift_threshold(bits), then sums the large-z expansion
///   log G(w+1) ~ w^2 (log w / 2 - 3/4) + (w/2) log 2pi - (log w)/12 + zeta'(-1)
///                + sum_k B_{2k+2} / (4k(k+1) w^{2k})
/// until the terms drop below the working precision.
Real log_barnes_g(const Real& z, const PrecisionCtx& ctx);

/// Smallest argument at which log_barnes_g switches to the expansion.
double barnes_shift_threshold(int bits);

/// The large-w expansion of log G(w+1) truncated after `terms` Bernoulli
/// corrections (terms = 0 keeps only the zeta'(-1) constant block).
Real log_barnes_g_expansion(const Real& w, int terms, const PrecisionCtx& ctx);

/// zeta'(-1) = 1/12 - log A (Glaisher-Kinkelin), with log A from the
/// Euler-Maclaurin expansion of the hyperfactorial sum_{k<=N} k log k.
Real zeta_prime_minus_one(const PrecisionCtx& ctx);

/// Regularized Bessel pair: g(x) = J_a(sqrt x) / x^(a/2) and
/// h(x) = sqrt(x) J_a'(sqrt x) / x^(a/2). Both are entire in x.
struct BesselPair {
  Real g;
  Real h;
};

BesselPair bessel_pair(const Real& alpha, const Real& x, const PrecisionCtx& ctx);

/// The `order`-th x-derivatives of the regularized pair.
BesselPair bessel_pair_derivative(const Real& alpha, const Real& x, int order, const PrecisionCtx& ctx);

/// log of int_t^1 x^(k+alpha) (1-x)^beta dx.
Real log_inc_beta(int k, const Real& t, const Real& alpha, const Real& beta, const PrecisionCtx& ctx);

/// log of int_t^1 x^(a-1) (1-x)^(b-1) dx for a, b > 0, 0 <= t < 1.
Real log_upper_beta(const Real& a, const Real& b, const Real& t, const PrecisionCtx& ctx);

/// Weight family of a Gauss rule. For `jacobi` the weight on (lo, hi) is
/// (x - lo)^exponent.
struct QuadKind {
  enum class Family { legendre, jacobi };
  Family family = Family::legendre;
  double exponent = 0.0;

  static QuadKind legendre() { return {}; }
  static QuadKind jacobi(double a) { return {Family::jacobi, a}; }
};

struct QuadratureRule {
  QuadKind kind;
  Real lo;
  Real hi;
  std::vector<Real> nodes;    // strictly increasing, inside (lo, hi)
  std::vector<Real> weights;  // positive

  std::size_t size() const { return nodes.size(); }
};

/// m-point Gauss rule by Golub-Welsch on the three-term recurrence of the
/// orthogonal family, mapped affinely to (lo, hi).
QuadratureRule quad_rule(QuadKind kind, int m, const Real& lo, const Real& hi, const PrecisionCtx& ctx);

}  // namespace hardedge::specfun
