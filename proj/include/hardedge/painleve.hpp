#pragma once

// Second finite-n route: the Painlevé VI equation for
//   W_n(t) = 1 - (1 - t) x_n(t) / A_n
// integrated numerically, plus the algebraic maps from (W_n, W_n') to H_n
// and to the auxiliary quantities x_n, y_n, r_n.
//
// t = 0 is a fixed singularity of the equation and W_n(0) = 0, W_n'(0) = 1
// do not single out a solution: near 0 the solution family is
//   W_n(t) = t + C (1 - t) t^(1+alpha) + ...
// with a free coefficient C. series_at_zero computes C from the classical
// (t = 0) Jacobi orthogonal polynomials: at leading order the truncation
// removes a point mass t^(alpha+1)/(alpha+1) at x = 0.
//
// The state is integrated with a Taylor-series method in extended precision:
// perturbations of the physical solution grow roughly like exp(A_n) across
// (0, 1), which rules out double-precision Runge-Kutta.

#include <vector>

#include "hardedge/finite_n.hpp"
#include "hardedge/real.hpp"

namespace hardedge::painleve {

enum class SeedMode { series_at_zero, large_n_seed };

struct IntegrateOptions {
  /// Local error per step, relative to the solution scale. Zero selects
  /// 2^(-bits/2) of the context.
  double tol = 0.0;
  /// Seed abscissa for series_at_zero; zero selects an automatic value.
  double seed_t0 = 0.0;
  /// Re-run from t0/2 and record the discrepancy (series_at_zero only).
  bool verify_seed = false;
  /// Taylor order; zero derives it from tol.
  int order = 0;
  long max_steps = 200000;
};

struct Diagnostics {
  long steps = 0;
  double min_step = 0.0;
  bool pole_proximity = false;
  double seed_t = 0.0;
  /// Largest |W| difference on the grid under t0 halving (-1 if not run).
  double seed_discrepancy = -1.0;
  bool seed_unstable = false;
};

struct PainleveTrajectory {
  finite_n::EnsembleParams params;
  SeedMode seed_mode;
  std::vector<Real> grid;
  std::vector<Real> w;
  std::vector<Real> wp;
  Diagnostics diagnostics;
};

/// Singular-manifold tolerance for sampled points.
inline constexpr double kSingularTolerance = 1e-12;

/// Coefficient C of the t^(1+alpha) term of W_n - t at t -> 0.
Real local_seed_coefficient(const finite_n::EnsembleParams& params, const PrecisionCtx& ctx);

/// Right side of the Painlevé VI equation exactly as printed (for checks).
Real pvi_rhs(const Real& t, const Real& w, const Real& wp, const finite_n::EnsembleParams& params);

/// Integrates W_n over a strictly increasing grid in (0, 1). Throws
/// SingularityError if the trajectory meets W in {0, 1, t}.
PainleveTrajectory integrate_w(const finite_n::EnsembleParams& params, const std::vector<Real>& grid, SeedMode mode,
                               const IntegrateOptions& opts, const PrecisionCtx& ctx);

/// H_n from (W_n, W_n') by the closed algebraic map.
Real hn_from_w(const Real& t, const Real& w, const Real& wp, const finite_n::EnsembleParams& params);

/// x_n, y_n, r_n from (W_n, W_n'); big_r is left at zero.
finite_n::AuxQuantities aux_from_w(const Real& t, const Real& w, const Real& wp,
                                   const finite_n::EnsembleParams& params);

/// y_n from x_n and x_n'.
Real yn_from_xn(const Real& t, const Real& x, const Real& xp, const finite_n::EnsembleParams& params);

/// r_n from x_n, x_n', y_n.
Real rn_from_xn_yn(const Real& t, const Real& x, const Real& xp, const Real& y,
                   const finite_n::EnsembleParams& params);

/// H_n from y_n and r_n: (2n+a+b)(y_n - t r_n) - n(n+a).
Real hn_from_yn_rn(const Real& t, const Real& y, const Real& r, const finite_n::EnsembleParams& params);

/// H_n from x_n, x_n', y_n (the combined form).
Real hn_from_xn_yn(const Real& t, const Real& x, const Real& xp, const Real& y,
                   const finite_n::EnsembleParams& params);

}  // namespace hardedge::painleve
