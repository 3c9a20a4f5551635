#include "hardedge/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardedge/asymptotics.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/linalg.hpp"

namespace hardedge::painleve {

namespace {

// Coefficient-at-a-time Taylor arithmetic over an expression DAG. Node k-th
// coefficients depend only on coefficients <= k of their operands, except
// `derivative`, which reads coefficient k+1 of its operand.
class TaylorTape {
 public:
  enum class Op { input, time, constant, add, sub, mul, div, scale, derivative };

  int input() { return push(Op::input, -1, -1, Real(0)); }
  int time() { return push(Op::time, -1, -1, Real(0)); }
  int constant(const Real& v) { return push(Op::constant, -1, -1, v); }
  int add(int a, int b) { return push(Op::add, a, b, Real(0)); }
  int sub(int a, int b) { return push(Op::sub, a, b, Real(0)); }
  int mul(int a, int b) { return push(Op::mul, a, b, Real(0)); }
  int div(int a, int b) { return push(Op::div, a, b, Real(0)); }
  int scale(int a, const Real& s) { return push(Op::scale, a, -1, s); }
  int derivative(int a) { return push(Op::derivative, a, -1, Real(0)); }

  void reset(int order, const Real& t0) {
    for (auto& node : nodes_) {
      node.c.assign(static_cast<std::size_t>(order + 2), Real(0));
      if (node.op == Op::time) {
        node.c[0] = t0;
        node.c[1] = 1;
      } else if (node.op == Op::constant) {
        node.c[0] = node.scalar;
      }
    }
  }

  Real& coeff(int node, int k) { return nodes_[node].c[k]; }

  void evaluate(int k) {
    for (auto& node : nodes_) {
      switch (node.op) {
        case Op::input:
        case Op::time:
        case Op::constant:
          break;
        case Op::add:
          node.c[k] = nodes_[node.a].c[k] + nodes_[node.b].c[k];
          break;
        case Op::sub:
          node.c[k] = nodes_[node.a].c[k] - nodes_[node.b].c[k];
          break;
        case Op::scale:
          node.c[k] = node.scalar * nodes_[node.a].c[k];
          break;
        case Op::derivative:
          node.c[k] = Real(k + 1) * nodes_[node.a].c[k + 1];
          break;
        case Op::mul: {
          const auto& x = nodes_[node.a].c;
          const auto& y = nodes_[node.b].c;
          Real s = 0;
          for (int j = 0; j <= k; ++j) {
            if (x[j].is_zero() || y[k - j].is_zero()) continue;
            s += x[j] * y[k - j];
          }
          node.c[k] = s;
          break;
        }
        case Op::div: {
          const auto& x = nodes_[node.a].c;
          const auto& y = nodes_[node.b].c;
          Real s = x[k];
          for (int j = 1; j <= k; ++j) {
            if (y[j].is_zero()) continue;
            s -= y[j] * node.c[k - j];
          }
          node.c[k] = s / y[0];
          break;
        }
      }
    }
  }

 private:
  struct Node {
    Op op;
    int a;
    int b;
    Real scalar;
    std::vector<Real> c;
  };

  int push(Op op, int a, int b, const Real& s) {
    nodes_.push_back(Node{op, a, b, s, {}});
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Node> nodes_;
};

// The equation in the unknown d = W - t with the 1/(W - t) singular parts
// cancelled analytically:
//   d'' = (1/2)(1/W + 1/(W-1)) d'^2 - (d/2)(2W'-1)(1/(W t) + 1/((W-1)(t-1)))
//         + d'^2/(2d) + d/(2t(t-1)) + (A^2/2) W(W-1)d/(t^2(t-1)^2)
//         - (a^2/2)(W-1)d/(W t (t-1)^2) + (b^2/2) W d/((W-1) t^2 (t-1))
struct PviTape {
  TaylorTape tape;
  int d = 0;
  int f = 0;

  explicit PviTape(const finite_n::EnsembleParams& p) {
    auto& tp = tape;
    d = tp.input();
    const int dp = tp.derivative(d);
    const int t = tp.time();
    const int one = tp.constant(Real(1));
    const int w = tp.add(d, t);
    const int wm1 = tp.sub(w, one);
    const int tm1 = tp.sub(t, one);
    const int iw = tp.div(one, w);
    const int iwm1 = tp.div(one, wm1);
    const int it = tp.div(one, t);
    const int itm1 = tp.div(one, tm1);
    const int dp2 = tp.mul(dp, dp);
    const int aw = tp.add(iw, iwm1);
    const int t1 = tp.scale(tp.mul(aw, dp2), Real(1) / 2);
    const int two_v_m1 = tp.add(tp.scale(dp, Real(2)), one);
    const int g = tp.add(tp.mul(iw, it), tp.mul(iwm1, itm1));
    const int t2 = tp.scale(tp.mul(tp.mul(d, two_v_m1), g), Real(-1) / 2);
    const int t3 = tp.scale(tp.div(dp2, d), Real(1) / 2);
    const int it_itm1 = tp.mul(it, itm1);
    const int t4 = tp.scale(tp.mul(d, it_itm1), Real(1) / 2);
    const int d_itm1sq = tp.mul(tp.mul(d, itm1), itm1);
    const Real an = p.a_n();
    const int t5 = tp.scale(tp.mul(tp.mul(tp.mul(w, wm1), d_itm1sq), tp.mul(it, it)), an * an / 2);
    const Real a2 = Real(p.alpha) * p.alpha;
    const int t6 = tp.scale(tp.mul(tp.mul(wm1, d_itm1sq), tp.mul(iw, it)), -a2 / 2);
    const Real b2 = Real(p.beta) * p.beta;
    const int t7 = tp.scale(tp.mul(tp.mul(tp.mul(w, d), iwm1), tp.mul(tp.mul(it, it), itm1)), b2 / 2);
    f = tp.add(tp.add(tp.add(t1, t2), tp.add(t3, t4)), tp.add(tp.add(t5, t6), t7));
  }
};

struct StepResult {
  Real d;
  Real dp;
  Real h;
};

class TaylorIntegrator {
 public:
  TaylorIntegrator(const finite_n::EnsembleParams& p, double tol, int order) : pvi_(p), tol_(tol), order_(order) {}

  // Advances (t, d, d') by at most `max_h`.
  StepResult step(const Real& t, const Real& d, const Real& dp, const Real& max_h) {
    auto& tape = pvi_.tape;
    tape.reset(order_, t);
    tape.coeff(pvi_.d, 0) = d;
    tape.coeff(pvi_.d, 1) = dp;
    for (int k = 0; k + 2 <= order_; ++k) {
      tape.evaluate(k);
      tape.coeff(pvi_.d, k + 2) = tape.coeff(pvi_.f, k) / Real((k + 1) * (k + 2));
    }
    const Real scale = max(abs(d), ldexp(Real(1), -4 * working_bits()));
    const Real eps = Real(tol_) * scale;
    Real h = max_h;
    for (int j = order_ - 1; j <= order_; ++j) {
      const Real& c = tape.coeff(pvi_.d, j);
      if (c.is_zero()) continue;
      const Real hj = pow(eps / abs(c), Real(1) / Real(j));
      if (hj < h) h = hj;
    }
    // Horner for d(t + h) and d'(t + h).
    Real val = 0;
    Real der = 0;
    for (int j = order_; j >= 0; --j) {
      val = val * h + tape.coeff(pvi_.d, j);
      if (j >= 1) der = der * h + Real(j) * tape.coeff(pvi_.d, j);
    }
    return {val, der, h};
  }

 private:
  PviTape pvi_;
  double tol_;
  int order_;
};

void check_grid(const std::vector<Real>& grid) {
  if (grid.empty()) throw DomainError("integrate_w: empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0 && grid[i] < 1)) throw DomainError("integrate_w: grid must lie in (0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("integrate_w: grid must be strictly increasing");
  }
}

bool near_singular(const Real& t, const Real& w) {
  const Real tol = kSingularTolerance;
  return abs(w) < tol || abs(w - 1) < tol || abs(w - t) < tol;
}

struct RunOutput {
  std::vector<Real> w;
  std::vector<Real> wp;
  long steps = 0;
  double min_step = 0.0;
};

RunOutput run(const finite_n::EnsembleParams& params, const std::vector<Real>& grid, Real t, Real d, Real dp,
              double tol, int order, long max_steps) {
  TaylorIntegrator integrator(params, tol, order);
  RunOutput out;
  out.min_step = 1.0;
  for (const Real& target : grid) {
    while (t < target) {
      if (out.steps >= max_steps) {
        throw SingularityError("integrate_w: step budget exhausted (pole or stiff region?)", t.to_double());
      }
      const Real max_h = target - t;
      auto s = integrator.step(t, d, dp, max_h);
      const bool landed = !(s.h < max_h);
      if (!(s.h > ldexp(t, -60)) && !landed) {
        throw SingularityError("integrate_w: step size collapsed near a movable singularity", t.to_double());
      }
      out.min_step = std::min(out.min_step, s.h.to_double());
      t = landed ? target : t + s.h;
      d = s.d;
      dp = s.dp;
      ++out.steps;
      if (d.is_zero() || !d.is_finite()) throw SingularityError("integrate_w: trajectory reached W = t", t.to_double());
      const Real w = d + t;
      if (!(w > 0 && w < 1) && !(w < 0 || w > 1)) {
        throw SingularityError("integrate_w: trajectory reached W in {0, 1}", t.to_double());
      }
    }
    const Real w = d + t;
    if (near_singular(t, w)) {
      throw SingularityError("integrate_w: sampled point within 1e-12 of a singular manifold", t.to_double());
    }
    out.w.push_back(w);
    out.wp.push_back(dp + 1);
  }
  return out;
}

}  // namespace

Real local_seed_coefficient(const finite_n::EnsembleParams& params, const PrecisionCtx& ctx) {
  if (!(params.beta > 0)) throw DomainError("painleve: requires beta > 0");
  PrecisionScope scope(ctx.guarded());
  const int n = params.n;
  const auto m = finite_n::moment_matrix(Real(0), params, 0, ctx, n + 1).entries;
  const auto m1 = finite_n::moment_matrix(Real(0), params, -1, ctx, n + 1).entries;
  linalg::Matrix lower;
  if (!linalg::cholesky(m, lower)) throw PrecisionError("painleve: t=0 moment matrix not positive definite", 2 * ctx.bits);
  const auto inv = linalg::invert_lower(lower);

  // Orthonormal q_k = row k of L^-1; P_n = L_nn q_n; h_n = L_nn^2;
  // K_{n-1}(x, 0) = sum_{k<n} q_k(x) q_k(0).
  std::vector<Real> pn(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) pn[j] = inv(n, j) * lower(n, n);
  const Real hn = lower(n, n) * lower(n, n);
  std::vector<Real> kernel(static_cast<std::size_t>(n + 1));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j <= k; ++j) kernel[j] += inv(k, j) * inv(k, 0);

  const Real beta = params.beta;
  const Real xn0 = beta / hn * linalg::bilinear(pn, m1, pn);
  const Real q = linalg::bilinear(pn, m1, kernel);
  const Real& p0 = pn[0];
  const Real shift = (p0 * p0 * (xn0 - beta) + 2 * beta * p0 * q) / hn;
  return -shift / (Real(params.a_n()) * (params.alpha + 1));
}

Real pvi_rhs(const Real& t, const Real& w, const Real& wp, const finite_n::EnsembleParams& p) {
  const Real an = p.a_n();
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real wm1 = w - 1;
  const Real wmt = w - t;
  const Real tm1 = t - 1;
  return (Real(1) / w + Real(1) / wm1 + Real(1) / wmt) * wp * wp / 2 - (Real(1) / t + Real(1) / tm1 + Real(1) / wmt) * wp +
         w * wm1 * wmt / (t * t * tm1 * tm1) *
             (an * an / 2 - a * a * t / (2 * w * w) + b * b * tm1 / (2 * wm1 * wm1) + t * tm1 / (2 * wmt * wmt));
}

PainleveTrajectory integrate_w(const finite_n::EnsembleParams& params, const std::vector<Real>& grid, SeedMode mode,
                               const IntegrateOptions& opts, const PrecisionCtx& ctx) {
  check_grid(grid);
  if (!(params.beta > 0)) throw DomainError("integrate_w: requires beta > 0");
  // At alpha = 0 the solution is W = 0 identically, on the singular manifold.
  if (params.alpha == 0.0) throw SingularityError("integrate_w: W_n vanishes identically at alpha = 0", 0.0);
  PrecisionScope scope(ctx.guarded());

  const double tol = opts.tol > 0.0 ? opts.tol : std::ldexp(1.0, -ctx.bits / 2);
  const int order = opts.order > 0 ? opts.order : static_cast<int>(std::ceil(-std::log(tol) / 2.0)) + 2;

  PainleveTrajectory traj{params, mode, grid, {}, {}, {}};
  auto& diag = traj.diagnostics;

  if (mode == SeedMode::large_n_seed) {
    const Real& t0 = grid.front();
    const Real w0 = asymptotics::wn_series(t0, params).value;
    const Real w0p = asymptotics::wn_series_derivative(t0, params);
    diag.seed_t = t0.to_double();
    auto out = run(params, grid, t0, w0 - t0, w0p - 1, tol, order, opts.max_steps);
    traj.w = std::move(out.w);
    traj.wp = std::move(out.wp);
    diag.steps = out.steps;
    diag.min_step = out.min_step;
    return traj;
  }

  const Real c = local_seed_coefficient(params, ctx);
  const double exponent = std::min(1.0, 1.0 + params.alpha);
  double t0 = opts.seed_t0;
  if (t0 <= 0.0) t0 = std::min(1e-4, std::pow(tol, 1.0 / exponent) * 1e-3);
  if (!(t0 < grid.front().to_double())) throw DomainError("integrate_w: seed t0 must precede the grid");

  auto seeded = [&](double seed_t) {
    const Real ts = seed_t;
    const Real tpow = pow(ts, Real(1 + params.alpha));
    const Real d0 = c * (1 - ts) * tpow;
    const Real d0p = c * ((1 + params.alpha) * (1 - ts) * tpow / ts - tpow);
    return run(params, grid, ts, d0, d0p, tol, order, opts.max_steps);
  };

  auto out = seeded(t0);
  diag.seed_t = t0;
  diag.steps = out.steps;
  diag.min_step = out.min_step;
  if (opts.verify_seed) {
    const auto half = seeded(t0 / 2);
    Real worst = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) worst = max(worst, abs(half.w[i] - out.w[i]));
    diag.seed_discrepancy = worst.to_double();
    diag.seed_unstable = diag.seed_discrepancy > 10.0 * tol;
  }
  traj.w = std::move(out.w);
  traj.wp = std::move(out.wp);
  return traj;
}

Real hn_from_w(const Real& t, const Real& w, const Real& wp, const finite_n::EnsembleParams& p) {
  if (near_singular(t, w)) throw SingularityError("hn_from_w: W within 1e-12 of {0, 1, t}", t.to_double());
  const Real an = p.a_n();
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real n = p.n;
  const Real omt = 1 - t;
  const Real s = 2 * n + a + b;
  return t * t * omt * omt * wp * wp / (4 * w * (w - 1) * (w - t)) + t * omt * wp / (2 * (w - t)) -
         an / 4 * (2 * n - 1 + a + b) * w + (t * (s * s + 1) + a * a - b * b - 1) / 4 - a * a * t / (4 * w) +
         b * b * (t - 1) / (4 * (w - 1)) + t * (t - 1) / (4 * (w - t));
}

Real yn_from_xn(const Real& t, const Real& x, const Real& xp, const finite_n::EnsembleParams& p) {
  const Real an = p.a_n();
  const Real a = p.alpha;
  const Real b = p.beta;
  const Real n = p.n;
  const Real omt = 1 - t;
  if (x.is_zero()) throw SingularityError("yn_from_xn: x_n = 0", t.to_double());
  if ((x - an).is_zero()) throw SingularityError("yn_from_xn: x_n = A_n", t.to_double());
  if ((omt * x - an).is_zero()) throw SingularityError("yn_from_xn: x_n = A_n/(1-t)", t.to_double());
  const Real f = (t * omt * xp + (x - an) * (b - omt * x)) / (2 * x);
  return -x * (x * f * f + (x - an) * ((2 * n + a) * f + n * (n + a) * t)) /
         ((2 * n + a + b) * (x - an) * (omt * x - an));
}

Real rn_from_xn_yn(const Real& t, const Real& x, const Real& xp, const Real& y, const finite_n::EnsembleParams& p) {
  if (x.is_zero()) throw SingularityError("rn_from_xn_yn: x_n = 0", t.to_double());
  const Real an = p.a_n();
  const Real b = p.beta;
  const Real omt = 1 - t;
  return Real(-1) / 2 + (an + omt * xp) / (2 * x) - (2 * y + b - omt * x + t) * (an - x) / (2 * t * x);
}

Real hn_from_yn_rn(const Real& t, const Real& y, const Real& r, const finite_n::EnsembleParams& p) {
  const Real n = p.n;
  return (2 * n + p.alpha + p.beta) * (y - t * r) - n * (n + p.alpha);
}

Real hn_from_xn_yn(const Real& t, const Real& x, const Real& xp, const Real& y, const finite_n::EnsembleParams& p) {
  if (x.is_zero()) throw SingularityError("hn_from_xn_yn: x_n = 0", t.to_double());
  const Real an = p.a_n();
  const Real n = p.n;
  const Real b = p.beta;
  const Real omt = 1 - t;
  return (2 * n + p.alpha + b) / (2 * x) * (2 * an * y - t * omt * xp + (x - an) * (omt * x - b)) -
         n * (n + p.alpha);
}

finite_n::AuxQuantities aux_from_w(const Real& t, const Real& w, const Real& wp, const finite_n::EnsembleParams& p) {
  if (near_singular(t, w)) throw SingularityError("aux_from_w: W within 1e-12 of {0, 1, t}", t.to_double());
  const Real an = p.a_n();
  const Real omt = 1 - t;
  finite_n::AuxQuantities aux;
  aux.x = an * (1 - w) / omt;
  // d/dt [A (1 - W) / (1 - t)]
  const Real xp = an * ((1 - w) - omt * wp) / (omt * omt);
  aux.y = yn_from_xn(t, aux.x, xp, p);
  aux.r = rn_from_xn_yn(t, aux.x, xp, aux.y, p);
  return aux;
}

}  // namespace hardedge::painleve
