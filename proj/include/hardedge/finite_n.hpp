#pragma once

// Exact finite-n evaluation of the truncated Jacobi Hankel determinant
//   D_n(t) = det( int_t^1 x^(i+j) x^alpha (1-x)^beta dx )_{i,j<n}
// and of the quantities built from its monic orthogonal polynomials.
// This is the ground-truth route every other route is compared against.
//
// log_dn is the log of the Heine/Hankel determinant itself; the 1/n! of the
// multiple-integral form is already absorbed by Heine's identity, and it
// cancels in every probability exported here anyway.

#include <vector>

#include "hardedge/linalg.hpp"
#include "hardedge/real.hpp"

namespace hardedge::finite_n {

/// Weight x^alpha (1-x)^beta on [0, 1] with n eigenvalues.
struct EnsembleParams {
  double alpha;
  double beta;
  int n;

  /// Validates alpha > -1, beta > -1, n >= 1.
  EnsembleParams(double alpha_, double beta_, int n_);

  /// A_n = 2n + 1 + alpha + beta
  double a_n() const { return 2.0 * n + 1.0 + alpha + beta; }
};

/// Default working precision for an n-point Hankel problem: max(256, 24 n).
int default_bits(int n);

/// Precision policy including the extra conditioning of a short interval
/// [t, 1]: 24 n + 2 n log2(1 / (1 - t)) bits, at least 256.
int default_bits(int n, double t);

struct MomentMatrix {
  Real t;
  int beta_shift = 0;  // 0 or -1 (moments of x^alpha (1-x)^(beta-1))
  linalg::Matrix entries;

  std::size_t size() const { return entries.rows(); }
};

/// Hankel matrix M_ij = int_t^1 x^(i+j+alpha) (1-x)^(beta+beta_shift) dx of
/// dimension `size` (defaults to params.n).
MomentMatrix moment_matrix(const Real& t, const EnsembleParams& params, int beta_shift, const PrecisionCtx& ctx,
                           int size = -1);

/// log det of the moment matrix via 2 sum log diag(chol).
Real log_dn(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);

/// log D_n(0) from the Barnes-G closed form
///   G(n+1)G(n+a+1)G(n+b+1)G(n+a+b+1) / (G(a+1)G(b+1)G(2n+a+b+1)).
Real log_dn_closed_form(const EnsembleParams& params, const PrecisionCtx& ctx);

/// log P(smallest eigenvalue >= t) = log D_n(t) - log D_n(0).
Real log_prob_smallest(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);

/// log P(largest eigenvalue <= t) = log P(smallest >= 1 - t) with alpha and beta swapped.
Real log_prob_largest(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);

/// H_n(t) = t(t-1) d/dt log D_n(t), from the trace identity with the exact
/// entrywise derivative of the moments (no differencing).
Real hn_exact(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);

/// Monic orthogonal polynomials P_n, P_{n-1} on [t, 1].
struct OrthoBasis {
  int degree = 0;
  std::vector<Real> pn;        // coefficients, ascending powers, pn.back() == 1
  std::vector<Real> pn_prev;   // P_{n-1}; empty when degree == 0
  Real hn;
  Real hn_prev;                // h_{n-1}; zero when degree == 0
  Real pn_at_t;                // P_n(t, t)
  Real pn_prev_at_t;           // P_{n-1}(t, t); zero when degree == 0

  /// Second coefficient of P_n (x^(n-1) coefficient).
  Real p1() const { return degree > 0 ? pn[static_cast<std::size_t>(degree - 1)] : Real(0); }
};

OrthoBasis ortho_basis(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);
OrthoBasis ortho_basis(const Real& t, double alpha, double beta, int degree, const PrecisionCtx& ctx);

struct AuxQuantities {
  Real big_r;  // R_n
  Real r;      // r_n
  Real x;      // x_n
  Real y;      // y_n
};

/// R_n, r_n, x_n, y_n at t in (0, 1); needs beta > 0.
AuxQuantities aux_exact(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx);
/// Same for any degree >= 0 (degree 0 gives y = r = 0).
AuxQuantities aux_exact(const Real& t, double alpha, double beta, int degree, const PrecisionCtx& ctx);

}  // namespace hardedge::finite_n
