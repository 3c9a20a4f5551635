#include "hardedge/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hardedge/errors.hpp"
#include "hardedge/linalg.hpp"

namespace hardedge::specfun {

namespace {

// |B_{2j}| for j = 1, 2, ... via |B_{2j}| = 2 (2j)! zeta(2j) / (2 pi)^{2j}.
// The ratio form avoids huge factorials.
class BernoulliMagnitudes {
 public:
  BernoulliMagnitudes() : two_pi_sq_(pow(ldexp(pi(), 1), 2)), zeta_prev_(zeta_ui(2)), value_(Real(1) / 6), j_(1) {}

  const Real& value() const { return value_; }
  int index() const { return j_; }
  /// Signed B_{2j}.
  Real signed_value() const { return (j_ % 2 == 1) ? value_ : -value_; }

  void next() {
    const Real zeta_next = zeta_ui(static_cast<unsigned long>(2 * j_ + 2));
    value_ *= Real((2 * j_ + 1) * (2 * j_ + 2)) / two_pi_sq_ * zeta_next / zeta_prev_;
    zeta_prev_ = zeta_next;
    ++j_;
  }

 private:
  Real two_pi_sq_;
  Real zeta_prev_;
  Real value_;
  int j_;
};

void require_positive(const Real& x, const char* what) {
  if (!(x > 0)) throw DomainError(std::string(what) + ": argument must be > 0, got " + x.str(17));
}

}  // namespace

Real log_gamma(const Real& x, const PrecisionCtx& ctx) {
  require_positive(x, "log_gamma");
  PrecisionScope scope(ctx.guarded());
  return lgamma_positive(x);
}

double barnes_shift_threshold(int bits) {
  // The smallest term of the expansion is about exp(-2 pi w).
  return std::ceil(bits * std::log(2.0) / (2.0 * M_PI)) + 2.0;
}

Real log_barnes_g_expansion(const Real& w, int terms, const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  const Real lw = log(w);
  Real sum = w * w * (lw / 2 - Real(3) / 4) + w / 2 * log2pi() - lw / 12 + zeta_prime_minus_one(ctx);
  if (terms <= 0) return sum;
  BernoulliMagnitudes bern;
  bern.next();  // B_4
  const Real inv_w2 = Real(1) / (w * w);
  Real wpow = inv_w2;
  for (int k = 1; k <= terms; ++k) {
    sum += bern.signed_value() / Real(4 * k * (k + 1)) * wpow;
    wpow *= inv_w2;
    bern.next();
  }
  return sum;
}

Real log_barnes_g(const Real& z, const PrecisionCtx& ctx) {
  require_positive(z, "log_barnes_g");
  PrecisionScope scope(ctx.guarded());
  const double threshold = barnes_shift_threshold(ctx.guarded());

  Real shifted = z;
  Real lgamma_sum = 0;
  while (shifted.to_double() < threshold) {
    lgamma_sum += lgamma_positive(shifted);
    shifted += 1;
  }
  const Real w = shifted - 1;

  // Asymptotic sum with terms B_{2k+2} / (4k(k+1) w^{2k}), stopped at the
  // working precision or where the terms start to grow.
  const Real lw = log(w);
  Real sum = w * w * (lw / 2 - Real(3) / 4) + w / 2 * log2pi() - lw / 12 + zeta_prime_minus_one(ctx);
  const Real eps = ldexp(abs(sum) + 1, -working_bits());
  BernoulliMagnitudes bern;
  bern.next();
  const Real inv_w2 = Real(1) / (w * w);
  Real wpow = inv_w2;
  Real last_mag = 0;
  for (int k = 1; k < 10000; ++k) {
    const Real term = bern.signed_value() / Real(4 * k * (k + 1)) * wpow;
    const Real mag = abs(term);
    if (k > 1 && mag > last_mag) break;
    sum += term;
    if (mag < eps) break;
    last_mag = mag;
    wpow *= inv_w2;
    bern.next();
  }
  return sum - lgamma_sum;
}

Real zeta_prime_minus_one(const PrecisionCtx& ctx) {
  PrecisionScope scope(ctx.guarded());
  const int n = static_cast<int>(std::ceil(working_bits() * std::log(2.0) / (2.0 * M_PI))) + 4;
  Real hyper = 0;  // sum_{k=2}^{N} k log k
  for (int k = 2; k <= n; ++k) hyper += Real(k) * log(Real(k));
  const Real big_n = n;
  const Real ln = log(big_n);
  Real log_a = hyper - (big_n * big_n / 2 + big_n / 2 + Real(1) / 12) * ln + big_n * big_n / 4;

  // log H(N) = main + log A - sum_{j>=2} B_{2j} / ((2j)(2j-1)(2j-2)) N^{2-2j}
  const Real eps = ldexp(Real(1), -working_bits());
  BernoulliMagnitudes bern;
  bern.next();  // B_4
  const Real inv_n2 = Real(1) / (big_n * big_n);
  Real npow = inv_n2;
  Real last_mag = 0;
  for (int j = 2; j < 10000; ++j) {
    const Real term = bern.signed_value() / Real((2 * j) * (2 * j - 1) * (2 * j - 2)) * npow;
    const Real mag = abs(term);
    if (j > 2 && mag > last_mag) break;
    log_a += term;
    if (mag < eps) break;
    last_mag = mag;
    npow *= inv_n2;
    bern.next();
  }
  return Real(1) / 12 - log_a;
}

namespace {

// (g^{(r)}, h^{(r)}) from the power series
//   g = 2^-a sum_k a_k x^k,  h = 2^-a sum_k (2k + a) a_k x^k,
//   a_k = (-1/4)^k / (k! Gamma(k + a + 1)).
BesselPair pair_series(const Real& alpha, const Real& x, int order, const PrecisionCtx& ctx) {
  if (!(alpha > -1)) throw DomainError("bessel_pair: alpha must be > -1, got " + alpha.str(17));
  if (x < 0) throw DomainError("bessel_pair: x must be >= 0, got " + x.str(17));
  if (order < 0) throw DomainError("bessel_pair: derivative order must be >= 0");

  // The alternating series loses about sqrt(x) * log2(e) bits.
  const double z = std::sqrt(std::max(0.0, x.to_double()));
  const int extra = static_cast<int>(std::ceil(1.5 * z)) + 10;
  PrecisionScope scope(ctx.guarded() + extra);

  const Real quarter = Real(-1) / 4;
  // a_order
  Real coeff = exp(-lgamma_positive(alpha + 1));
  for (int k = 1; k <= order; ++k) coeff *= quarter / (Real(k) * (alpha + k));

  Real falling = 1;  // k! / (k - order)! at k = order
  for (int k = 2; k <= order; ++k) falling *= k;

  Real term = coeff;  // a_k x^{k - order}
  Real g = falling * term;
  Real h = falling * (alpha + 2 * order) * term;
  Real peak = abs(g) + abs(h);
  const Real eps = ldexp(Real(1), -working_bits());
  const double xd = x.to_double();
  for (int k = order + 1; k < 100000; ++k) {
    term *= quarter * x / (Real(k) * (alpha + k));
    falling = falling * k / (k - order);
    const Real tg = falling * term;
    const Real th = tg * (alpha + 2 * k);
    g += tg;
    h += th;
    const Real mag = abs(tg) + abs(th);
    if (mag > peak) peak = mag;
    if (term.is_zero()) break;
    if (static_cast<double>(k) * (k + alpha.to_double()) > xd && mag < eps * peak) break;
  }
  const Real scale = pow(Real(2), -alpha);
  return {g * scale, h * scale};
}

}  // namespace

BesselPair bessel_pair(const Real& alpha, const Real& x, const PrecisionCtx& ctx) {
  return pair_series(alpha, x, 0, ctx);
}

BesselPair bessel_pair_derivative(const Real& alpha, const Real& x, int order, const PrecisionCtx& ctx) {
  return pair_series(alpha, x, order, ctx);
}

namespace {

// Continued fraction for the lower incomplete beta (modified Lentz):
// B_x(a, b) = x^a (1-x)^b / a * betacf(a, b, x), fast for x < (a+1)/(a+b+2).
Real beta_continued_fraction(const Real& a, const Real& b, const Real& x) {
  const Real tiny = ldexp(Real(1), -4 * working_bits());
  const Real eps = ldexp(Real(1), -working_bits());
  const Real qab = a + b;
  const Real qap = a + 1;
  const Real qam = a - 1;
  Real c = 1;
  Real d = 1 - qab * x / qap;
  if (abs(d) < tiny) d = tiny;
  d = Real(1) / d;
  Real h = d;
  const int max_iter = 200 + 20 * working_bits() + static_cast<int>(10 * std::sqrt(std::max(a, b).to_double()));
  for (int m = 1; m <= max_iter; ++m) {
    const int m2 = 2 * m;
    Real aa = Real(m) * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1) / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (abs(d) < tiny) d = tiny;
    c = 1 + aa / c;
    if (abs(c) < tiny) c = tiny;
    d = Real(1) / d;
    const Real del = d * c;
    h *= del;
    if (abs(del - 1) < eps) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge (a=" + a.str(10) +
                         ", b=" + b.str(10) + ", x=" + x.str(10) + ")");
}

}  // namespace

Real log_upper_beta(const Real& a, const Real& b, const Real& t, const PrecisionCtx& ctx) {
  require_positive(a, "log_upper_beta(a)");
  require_positive(b, "log_upper_beta(b)");
  if (t < 0 || !(t < 1)) throw DomainError("log_upper_beta: t must lie in [0, 1), got " + t.str(17));
  PrecisionScope scope(ctx.guarded());
  const Real log_complete = lgamma_positive(a) + lgamma_positive(b) - lgamma_positive(a + b);
  if (t.is_zero()) return log_complete;
  const Real y = 1 - t;
  if (y < (b + 1) / (a + b + 2)) {
    // int_t^1 x^(a-1) (1-x)^(b-1) dx = B_y(b, a)
    return b * log(y) + a * log(t) - log(b) + log(beta_continued_fraction(b, a, y));
  }
  const Real lower = exp(a * log(t) + b * log(y) - log(a)) * beta_continued_fraction(a, b, t);
  const Real upper = exp(log_complete) - lower;
  if (!(upper > 0)) throw PrecisionError("log_upper_beta: complement underflow", 2 * ctx.bits);
  return log(upper);
}

Real log_inc_beta(int k, const Real& t, const Real& alpha, const Real& beta, const PrecisionCtx& ctx) {
  if (k < 0) throw DomainError("log_inc_beta: k must be >= 0");
  if (!(alpha > -1)) throw DomainError("log_inc_beta: alpha must be > -1, got " + alpha.str(17));
  if (!(beta > -1)) throw DomainError("log_inc_beta: beta must be > -1, got " + beta.str(17));
  PrecisionScope scope(ctx.guarded());
  return log_upper_beta(alpha + (k + 1), beta + 1, t, ctx);
}

QuadratureRule quad_rule(QuadKind kind, int m, const Real& lo, const Real& hi, const PrecisionCtx& ctx) {
  if (m < 1) throw DomainError("quad_rule: m must be >= 1");
  if (!(lo < hi)) throw DomainError("quad_rule: require lo < hi");
  const double a = kind.family == QuadKind::Family::jacobi ? kind.exponent : 0.0;
  if (!(a > -1.0)) throw DomainError("quad_rule: jacobi exponent must be > -1");

  PrecisionScope scope(ctx.guarded());
  // Monic Jacobi recurrence for (1-u)^0 (1+u)^a on [-1, 1].
  const Real b = a;
  std::vector<Real> diag(static_cast<std::size_t>(m)), off(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    if (k == 0) {
      diag[0] = b / (b + 2);
    } else {
      const Real s = Real(2 * k) + b;
      diag[k] = b * b / (s * (s + 2));
    }
  }
  for (int k = 1; k < m; ++k) {
    const Real s = Real(2 * k) + b;
    const Real beta_k = Real(4 * k) * k * (b + k) * (b + k) / (s * s * (s + 1) * (s - 1));
    off[k - 1] = sqrt(beta_k);
  }
  std::vector<Real> first;
  linalg::tridiagonal_eigen(diag, off, &first);

  const Real mu0 = pow(Real(2), b + 1) / (b + 1);
  const Real half = (hi - lo) / 2;
  const Real wscale = pow(half, b + 1);

  std::vector<std::size_t> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });

  QuadratureRule rule{kind, lo, hi, {}, {}};
  rule.nodes.reserve(static_cast<std::size_t>(m));
  rule.weights.reserve(static_cast<std::size_t>(m));
  for (std::size_t idx : order) {
    rule.nodes.push_back(lo + half * (diag[idx] + 1));
    rule.weights.push_back(mu0 * first[idx] * first[idx] * wscale);
  }
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (!(rule.nodes[i] > lo && rule.nodes[i] < hi) || !(rule.weights[i] > 0) ||
        (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))) {
      throw ConvergenceError("quad_rule: Golub-Welsch produced an invalid rule at m=" + std::to_string(m));
    }
  }
  return rule;
}

}  // namespace hardedge::specfun
