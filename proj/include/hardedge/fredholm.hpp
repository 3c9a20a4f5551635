#pragma once

// Nyström evaluation of log det(I - K_Bessel) on (0, s).
//
// K(x, y) = (xy)^(a/2) G(x, y) with G entire, so the Gauss-Jacobi rule with
// weight x^a on (0, s) absorbs the branch factor and the discretized
// matrix sqrt(w_i w_j) G(x_i, x_j) converges spectrally in m.

#include <vector>

#include "hardedge/linalg.hpp"
#include "hardedge/real.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge::fredholm {

inline constexpr double kDiagonalDelta = 1e-6;

/// G(x, y) = [g(x) h(y) - h(x) g(y)] / (2 (x - y)); first-order Taylor about
/// the diagonal when |x - y| <= delta * max(1, x).
Real kernel_g(const Real& alpha, const Real& x, const Real& y, const PrecisionCtx& ctx,
              double delta = kDiagonalDelta);

struct NystromDiscretization {
  Real s;
  double alpha;
  int m;
  specfun::QuadratureRule rule;
  linalg::Matrix matrix;
};

/// ceil(10 + 2.2 sqrt(s)).
int default_points(double s);

/// Enough bits to resolve 1 - lambda for the eigenvalues closest to 1.
int default_bits(double s);

NystromDiscretization discretize(const Real& s, double alpha, int m, const PrecisionCtx& ctx);

/// Ascending eigenvalues of the discretized kernel. Throws
/// DiscretizationError if any lies outside [0, 1) beyond rounding.
std::vector<Real> kernel_eigenvalues(const NystromDiscretization& disc, const PrecisionCtx& ctx);

/// sum log(1 - lambda_i); m <= 0 selects default_points(s).
Real log_fredholm_det(const Real& s, double alpha, int m, const PrecisionCtx& ctx);

struct VerifiedDeterminant {
  Real value;         // at 2m points
  Real coarse;        // at m points
  int m = 0;
  double change = 0;  // |value - coarse|
};

/// Evaluates at m and 2m; throws DiscretizationError if the two differ by
/// more than `tol`.
VerifiedDeterminant log_fredholm_det_verified(const Real& s, double alpha, int m, double tol, const PrecisionCtx& ctx);

}  // namespace hardedge::fredholm
