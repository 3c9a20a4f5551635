#include "hardedge/finite_n.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardedge/errors.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge::finite_n {

EnsembleParams::EnsembleParams(double alpha_, double beta_, int n_) : alpha(alpha_), beta(beta_), n(n_) {
  if (!(alpha > -1.0)) throw DomainError("alpha must be > -1");
  if (!(beta > -1.0)) throw DomainError("beta must be > -1");
  if (n < 1) throw DomainError("n must be >= 1");
}

int default_bits(int n) { return std::max(256, 24 * n); }

int default_bits(int n, double t) {
  double extra = 0.0;
  if (t > 0.0 && t < 1.0) extra = 2.0 * n * std::log2(1.0 / (1.0 - t));
  return std::max(256, 24 * n + static_cast<int>(std::ceil(extra)));
}

namespace {

void check_t(const Real& t, const char* what) {
  if (t < 0 || !(t < 1)) throw DomainError(std::string(what) + ": t must lie in [0, 1), got " + t.str(17));
}

linalg::Matrix hankel(const Real& t, double alpha, double beta, int size, const PrecisionCtx& ctx) {
  std::vector<Real> moments(static_cast<std::size_t>(2 * size - 1));
  for (int k = 0; k < 2 * size - 1; ++k) moments[k] = exp(specfun::log_inc_beta(k, t, alpha, beta, ctx));
  linalg::Matrix m(static_cast<std::size_t>(size), static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m(i, j) = moments[static_cast<std::size_t>(i + j)];
  return m;
}

linalg::Matrix factor(const linalg::Matrix& m, const PrecisionCtx& ctx) {
  linalg::Matrix lower;
  if (!linalg::cholesky(m, lower)) {
    throw PrecisionError("moment matrix of size " + std::to_string(m.rows()) + " not numerically positive definite at " +
                             std::to_string(ctx.bits) + " bits",
                         2 * ctx.bits);
  }
  return lower;
}

Real log_det_from_cholesky(const linalg::Matrix& lower) {
  Real s = 0;
  for (std::size_t i = 0; i < lower.rows(); ++i) s += log(lower(i, i));
  return 2 * s;
}

}  // namespace

MomentMatrix moment_matrix(const Real& t, const EnsembleParams& params, int beta_shift, const PrecisionCtx& ctx,
                           int size) {
  check_t(t, "moment_matrix");
  if (beta_shift != 0 && beta_shift != -1) throw DomainError("moment_matrix: beta_shift must be 0 or -1");
  if (beta_shift == -1 && !(params.beta > 0)) throw DomainError("moment_matrix: beta_shift=-1 requires beta > 0");
  if (size < 0) size = params.n;
  if (size < 1) throw DomainError("moment_matrix: size must be >= 1");
  PrecisionScope scope(ctx.guarded());
  return {t, beta_shift, hankel(t, params.alpha, params.beta + beta_shift, size, ctx)};
}

Real log_dn(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  check_t(t, "log_dn");
  PrecisionScope scope(ctx.guarded());
  const auto m = hankel(t, params.alpha, params.beta, params.n, ctx);
  return log_det_from_cholesky(factor(m, ctx));
}

Real log_dn_closed_form(const EnsembleParams& params, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  const Real n = params.n;
  const Real a = params.alpha;
  const Real b = params.beta;
  auto lg = [&](const Real& z) { return specfun::log_barnes_g(z, ctx); };
  return lg(n + 1) + lg(n + a + 1) + lg(n + b + 1) + lg(n + a + b + 1) - lg(a + 1) - lg(b + 1) -
         lg(2 * n + a + b + 1);
}

Real log_prob_smallest(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  check_t(t, "log_prob_smallest");
  if (t.is_zero()) return Real(0);
  PrecisionScope scope(ctx.guarded());
  return log_dn(t, params, ctx) - log_dn(Real(0), params, ctx);
}

Real log_prob_largest(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  if (!(t > 0) || t > 1) throw DomainError("log_prob_largest: t must lie in (0, 1], got " + t.str(17));
  PrecisionScope scope(ctx.guarded());
  return log_prob_smallest(1 - t, EnsembleParams(params.beta, params.alpha, params.n), ctx);
}

Real hn_exact(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  if (!(t > 0 && t < 1)) throw DomainError("hn_exact: t must lie in (0, 1), got " + t.str(17));
  PrecisionScope scope(ctx.guarded());
  const auto lower = factor(hankel(t, params.alpha, params.beta, params.n, ctx), ctx);
  // d/dt M_ij = -t^(i+j+alpha) (1-t)^beta, so
  // t(t-1) tr(M^-1 M') = t(1-t) w(t) v^T M^-1 v with v_i = t^i.
  std::vector<Real> v(static_cast<std::size_t>(params.n));
  v[0] = 1;
  for (int i = 1; i < params.n; ++i) v[i] = v[i - 1] * t;
  const auto y = linalg::forward_substitute(lower, v);
  Real quad = 0;
  for (const auto& yi : y) quad += yi * yi;
  const Real weight = pow(t, Real(params.alpha)) * pow(1 - t, Real(params.beta));
  return t * (1 - t) * weight * quad;
}

OrthoBasis ortho_basis(const Real& t, double alpha, double beta, int degree, const PrecisionCtx& ctx) {
  check_t(t, "ortho_basis");
  if (degree < 0) throw DomainError("ortho_basis: degree must be >= 0");
  PrecisionScope scope(ctx.guarded());
  const int size = degree + 1;
  const auto lower = factor(hankel(t, alpha, beta, size, ctx), ctx);
  // Row k of L^-1 holds the orthonormal polynomial q_k; P_k = L_kk q_k, h_k = L_kk^2.
  const auto inv = linalg::invert_lower(lower);
  auto monic = [&](int k) {
    std::vector<Real> c(static_cast<std::size_t>(k + 1));
    for (int j = 0; j < k; ++j) c[j] = inv(k, j) * lower(k, k);
    c[k] = 1;
    return c;
  };
  auto horner = [&](const std::vector<Real>& c) {
    Real acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  OrthoBasis basis;
  basis.degree = degree;
  basis.pn = monic(degree);
  basis.hn = lower(degree, degree) * lower(degree, degree);
  basis.pn_at_t = horner(basis.pn);
  if (degree > 0) {
    basis.pn_prev = monic(degree - 1);
    basis.hn_prev = lower(degree - 1, degree - 1) * lower(degree - 1, degree - 1);
    basis.pn_prev_at_t = horner(basis.pn_prev);
  }
  return basis;
}

OrthoBasis ortho_basis(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  return ortho_basis(t, params.alpha, params.beta, params.n, ctx);
}

AuxQuantities aux_exact(const Real& t, double alpha, double beta, int degree, const PrecisionCtx& ctx) {
  if (!(t > 0 && t < 1)) throw DomainError("aux_exact: t must lie in (0, 1), got " + t.str(17));
  if (!(beta > 0)) throw DomainError("aux_exact: requires beta > 0");
  if (!(alpha > -1)) throw DomainError("aux_exact: alpha must be > -1");
  PrecisionScope scope(ctx.guarded());
  const auto basis = ortho_basis(t, alpha, beta, degree, ctx);
  const auto shifted = hankel(t, alpha, beta - 1, degree + 1, ctx);
  const Real weight = pow(t, Real(alpha)) * pow(1 - t, Real(beta));

  AuxQuantities aux;
  aux.x = Real(beta) / basis.hn * linalg::bilinear(basis.pn, shifted, basis.pn);
  aux.big_r = weight * basis.pn_at_t * basis.pn_at_t / basis.hn;
  if (degree > 0) {
    aux.y = Real(beta) / basis.hn_prev * linalg::bilinear(basis.pn, shifted, basis.pn_prev);
    aux.r = weight * basis.pn_at_t * basis.pn_prev_at_t / basis.hn_prev;
  }
  return aux;
}

AuxQuantities aux_exact(const Real& t, const EnsembleParams& params, const PrecisionCtx& ctx) {
  return aux_exact(t, params.alpha, params.beta, params.n, ctx);
}

}  // namespace hardedge::finite_n
