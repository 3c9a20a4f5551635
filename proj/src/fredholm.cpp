#include "hardedge/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardedge/errors.hpp"

namespace hardedge::fredholm {

namespace {

struct NodeData {
  specfun::BesselPair f;
  specfun::BesselPair d1;
  specfun::BesselPair d2;
};

NodeData node_data(const Real& alpha, const Real& x, const PrecisionCtx& ctx, bool with_derivatives) {
  NodeData nd;
  nd.f = specfun::bessel_pair(alpha, x, ctx);
  if (with_derivatives) {
    nd.d1 = specfun::bessel_pair_derivative(alpha, x, 1, ctx);
    nd.d2 = specfun::bessel_pair_derivative(alpha, x, 2, ctx);
  }
  return nd;
}

Real diagonal(const NodeData& a) { return (a.f.h * a.d1.g - a.f.g * a.d1.h) / 2; }

Real diagonal_slope(const NodeData& a) { return -(a.f.g * a.d2.h - a.f.h * a.d2.g) / 4; }

Real off_diagonal(const NodeData& a, const Real& x, const NodeData& b, const Real& y) {
  return (a.f.g * b.f.h - a.f.h * b.f.g) / (2 * (x - y));
}

bool near_diagonal(const Real& x, const Real& y, double delta) {
  return abs(x - y) <= Real(delta) * max(Real(1), x);
}

}  // namespace

Real kernel_g(const Real& alpha, const Real& x, const Real& y, const PrecisionCtx& ctx, double delta) {
  if (x < 0 || y < 0) throw DomainError("kernel_g: x, y must be >= 0");
  if (!(alpha > -1)) throw DomainError("kernel_g: alpha must be > -1");
  PrecisionScope scope(ctx.guarded());
  if (near_diagonal(x, y, delta)) {
    const auto a = node_data(alpha, x, ctx, true);
    return diagonal(a) + (y - x) * diagonal_slope(a);
  }
  return off_diagonal(node_data(alpha, x, ctx, false), x, node_data(alpha, y, ctx, false), y);
}

int default_points(double s) { return static_cast<int>(std::ceil(10.0 + 2.2 * std::sqrt(std::max(0.0, s)))); }

int default_bits(double s) {
  return 128 + static_cast<int>(std::ceil(2.0 * std::sqrt(std::max(0.0, s)) * std::log2(std::exp(1.0))));
}

NystromDiscretization discretize(const Real& s, double alpha, int m, const PrecisionCtx& ctx) {
  if (!(s > 0)) throw DomainError("log_fredholm_det: s must be > 0");
  if (!(alpha > -1.0)) throw DomainError("log_fredholm_det: alpha must be > -1");
  if (m <= 0) m = default_points(s.to_double());
  if (m < 4) throw DomainError("log_fredholm_det: m must be >= 4");
  PrecisionScope scope(ctx.guarded());

  NystromDiscretization disc{s, alpha, m, specfun::quad_rule(specfun::QuadKind::jacobi(alpha), m, Real(0), s, ctx), {}};
  const auto& x = disc.rule.nodes;
  const Real a = alpha;
  std::vector<NodeData> data;
  data.reserve(x.size());
  for (const auto& xi : x) data.push_back(node_data(a, xi, ctx, true));
  std::vector<Real> sw;
  sw.reserve(x.size());
  for (const auto& w : disc.rule.weights) sw.push_back(sqrt(w));

  disc.matrix = linalg::Matrix(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    disc.matrix(i, i) = sw[i] * sw[i] * diagonal(data[i]);
    for (std::size_t j = 0; j < i; ++j) {
      Real g = near_diagonal(x[j], x[i], kDiagonalDelta)
                   ? diagonal(data[j]) + (x[i] - x[j]) * diagonal_slope(data[j])
                   : off_diagonal(data[i], x[i], data[j], x[j]);
      g *= sw[i] * sw[j];
      disc.matrix(i, j) = g;
      disc.matrix(j, i) = g;
    }
  }
  return disc;
}

std::vector<Real> kernel_eigenvalues(const NystromDiscretization& disc, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  auto lambda = linalg::symmetric_eigenvalues(disc.matrix);
  const Real slack = ldexp(Real(1), -ctx.bits / 2);
  if (!lambda.empty() && !(lambda.back() < 1)) {
    throw DiscretizationError("Nystrom matrix has an eigenvalue >= 1 (s=" + disc.s.str(10) +
                                  ", m=" + std::to_string(disc.m) + "); increase m or precision",
                              2 * disc.m);
  }
  if (!lambda.empty() && lambda.front() < -slack) {
    throw DiscretizationError("Nystrom matrix has a negative eigenvalue " + lambda.front().str(6) +
                                  "; increase m or precision",
                              2 * disc.m);
  }
  return lambda;
}

Real log_fredholm_det(const Real& s, double alpha, int m, const PrecisionCtx& ctx) {
  const auto disc = discretize(s, alpha, m, ctx);
  PrecisionScope scope(ctx.guarded());
  Real sum = 0;
  for (const auto& l : kernel_eigenvalues(disc, ctx)) sum += log1p(-l);
  return sum;
}

VerifiedDeterminant log_fredholm_det_verified(const Real& s, double alpha, int m, double tol,
                                              const PrecisionCtx& ctx) {
  if (m <= 0) m = default_points(s.to_double());
  VerifiedDeterminant v;
  v.m = m;
  v.coarse = log_fredholm_det(s, alpha, m, ctx);
  v.value = log_fredholm_det(s, alpha, 2 * m, ctx);
  v.change = abs(v.value - v.coarse).to_double();
  if (v.change > tol) {
    throw DiscretizationError("log_fredholm_det: m=" + std::to_string(m) + " and 2m differ by " +
                                  std::to_string(v.change),
                              4 * m);
  }
  return v;
}

}  // namespace hardedge::fredholm
