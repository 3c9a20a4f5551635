#include "hardedge/asymptotics.hpp"

#include <string>

#include "hardedge/errors.hpp"
#include "hardedge/specfun.hpp"

namespace hardedge::asymptotics {

namespace {

void check_open_unit(const Real& t, const char* what) {
  if (!(t > 0 && t < 1)) throw DomainError(std::string(what) + ": t must lie in (0, 1), got " + t.str(17));
}

// The six log-blocks left over from the large-argument Barnes-G expansion
// of D_n(0,0,beta) / D_n(0,alpha,beta).
Real barnes_blocks(const finite_n::EnsembleParams& p) {
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real twelfth = Real(1) / 12;
  auto block = [&](const Real& z, int sign) {
    const Real c = z * z / 2 - twelfth;
    return (sign > 0 ? c : -c) * log(z);
  };
  return block(n, +1) + block(n + b, +1) + block(2 * n + a + b, +1) + block(n + a, -1) + block(2 * n + b, -1) +
         block(n + a + b, -1);
}

}  // namespace

Real logdet_constant(const Real& alpha, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  return specfun::log_barnes_g(alpha + 1, ctx) - alpha / 2 * log2pi();
}

Real logdet_series_nonconstant(const Real& s, const Real& alpha, const PrecisionCtx& ctx) {
  if (!(s > 0)) throw DomainError("logdet_series: s must be > 0");
  PrecisionScope scope(ctx.guarded());
  const Real& a = alpha;
  const Real a2 = a * a;
  const Real a3 = a2 * a;
  const Real rs = sqrt(s);
  const Real inv_rs = Real(1) / rs;
  Real v = -s / 4 + a * rs - a2 / 4 * log(s);
  Real p = inv_rs;  // s^(-1/2)
  v += a / 8 * p;
  p *= inv_rs;
  v += a2 / 16 * p;
  p *= inv_rs;
  v += (a3 / 24 + Real(3) * a / 128) * p;
  p *= inv_rs;
  v += (a2 * a2 / 32 + Real(9) * a2 / 128) * p;
  p *= inv_rs;
  v += (a3 * a2 / 40 + Real(9) * a3 / 64 + Real(45) * a / 1024) * p;
  return v;
}

ExpansionResult logdet_series(const Real& s, const Real& alpha, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  ExpansionResult r;
  r.value = logdet_series_nonconstant(s, alpha, ctx) + logdet_constant(alpha, ctx);
  r.budget = pow(s, -3L);
  r.order = "through s^(-5/2)";
  return r;
}

ExpansionResult logp_near_one(const Real& t, const finite_n::EnsembleParams& p, const PrecisionCtx& ctx) {
  check_open_unit(t, "logp_near_one");
  PrecisionScope scope(ctx.guarded());
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  ExpansionResult r;
  r.value = n * (n + b) * log(1 - t) + n * a * log(t) + logdet_constant(a, ctx) + Real(3) / 4 * a * a +
            barnes_blocks(p);
  r.budget = Real(1) / n + abs(1 - t);
  r.order = "through n^0, (1-t)^0";
  return r;
}

ExpansionResult logp_large_n(const Real& t, const finite_n::EnsembleParams& p, const PrecisionCtx& ctx) {
  check_open_unit(t, "logp_large_n");
  PrecisionScope scope(ctx.guarded());
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real l1t = log(1 - t);
  const Real lsq = log(1 + sqrt(t));
  const Real l2 = log(Real(2));
  ExpansionResult r;
  r.value = n * n * l1t + n * (b * l1t + 2 * a * lsq - 2 * a * l2) + a * (a + b) * lsq - a * a / 4 * log(t) -
            a * (a + b) * l2 + Real(3) / 4 * a * a + logdet_constant(a, ctx) + barnes_blocks(p);
  r.budget = Real(1) / n + Real(1) / (n * sqrt(t));
  r.order = "through n^0";
  return r;
}

Real hn_series_truncated(const Real& t, const finite_n::EnsembleParams& p, int last_power) {
  check_open_unit(t, "hn_series");
  if (last_power < -1 || last_power > 2) throw DomainError("hn_series_truncated: last_power must be in {2, 1, 0, -1}");
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real rt = sqrt(t);
  Real v = n * n * t;
  if (last_power <= 1) v += ((a + b) * t - a * rt) * n;
  if (last_power <= 0) v += a / 4 * ((a + 2 * b) * t - 2 * (a + b) * rt + a);
  if (last_power <= -1) v += a * (1 - t) * (1 + (4 * b * b - 1) * t) / (32 * rt * n);
  return v;
}

ExpansionResult hn_series(const Real& t, const finite_n::EnsembleParams& p) {
  ExpansionResult r;
  r.value = hn_series_truncated(t, p, -1);
  const Real n = p.n;
  r.budget = Real(1) / (n * n * t);
  r.order = "through n^-1";
  return r;
}

Real wn_series_truncated(const Real& t, const finite_n::EnsembleParams& p, int last_order) {
  check_open_unit(t, "wn_series");
  if (last_order < 1 || last_order > 3) throw DomainError("wn_series_truncated: last_order must be 1, 2 or 3");
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real rt = sqrt(t);
  Real v = a * rt / (2 * n);
  if (last_order >= 2) v -= a * (1 + a + b) / (4 * n * n) * rt;
  if (last_order >= 3) {
    const Real c = 4 * (a + b) * (a + b + 2) + 2 * b * b + 3;
    v += a * (t * t * (1 - 4 * b * b) + 2 * t * c + 1) / (64 * n * n * n * rt);
  }
  return v;
}

ExpansionResult wn_series(const Real& t, const finite_n::EnsembleParams& p) {
  ExpansionResult r;
  r.value = wn_series_truncated(t, p, 3);
  const Real n = p.n;
  r.budget = pow(n, -4L);
  r.order = "through n^-3";
  return r;
}

Real wn_series_derivative(const Real& t, const finite_n::EnsembleParams& p) {
  check_open_unit(t, "wn_series_derivative");
  const Real n = p.n;
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real rt = sqrt(t);
  const Real c = 4 * (a + b) * (a + b + 2) + 2 * b * b + 3;
  const Real poly = t * t * (1 - 4 * b * b) + 2 * t * c + 1;
  const Real dpoly = 2 * t * (1 - 4 * b * b) + 2 * c;
  return a / (4 * n * rt) - a * (1 + a + b) / (8 * n * n * rt) +
         a / (64 * n * n * n) * (dpoly / rt - poly / (2 * t * rt));
}

Real sym_gap_constant(const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  return log(Real(2)) / 12 + 3 * specfun::zeta_prime_minus_one(ctx);
}

ExpansionResult sym_gap_series(const Real& b, const PrecisionCtx& ctx) {
  if (!(b > 0)) throw DomainError("sym_gap_series: b must be > 0");
  PrecisionScope scope(ctx.guarded());
  const Real b2 = b * b;
  ExpansionResult r;
  r.value = -b2 / 2 - log(b) / 4 + sym_gap_constant(ctx) + Real(1) / (32 * b2) + Real(5) / (128 * b2 * b2);
  r.budget = pow(b, -6L);
  r.order = "through b^-4";
  return r;
}

}  // namespace hardedge::asymptotics
