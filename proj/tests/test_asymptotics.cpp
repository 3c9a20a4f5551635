#include <cmath>

#include "doctest.h"
#include "hardedge/asymptotics.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/finite_n.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/specfun.hpp"
#include "oracles.hpp"

using namespace hardedge;
using namespace hardedge::asymptotics;
using finite_n::EnsembleParams;

namespace {
constexpr double kFactor = 10.0;

bool within_budget(const ExpansionResult& e, const Real& truth) {
  return abs(e.value - truth) <= kFactor * e.budget;
}

Real exact_w(const Real& t, const EnsembleParams& p, const PrecisionCtx& ctx) {
  return 1 - (1 - t) * finite_n::aux_exact(t, p, ctx).x / Real(p.a_n());
}
}  // namespace

TEST_CASE("constants") {
  const PrecisionCtx ctx(256);
  PrecisionScope scope(ctx.guarded());
  CHECK(abs(logdet_constant(Real(0), ctx)).to_double() < 1e-70);
  CHECK(abs(logdet_constant(Real(1), ctx) + log(2 * pi()) / 2).to_double() < 1e-70);
  // G(3) = 1.
  CHECK(abs(logdet_constant(Real(2), ctx) + log(2 * pi())).to_double() < 1e-70);
  const Real sym = log(Real(2)) / 12 + 3 * oracle::zeta_prime_minus_one();
  CHECK(abs(sym_gap_constant(ctx) - sym).to_double() < 1e-40);
  CHECK(sym_gap_constant(ctx).to_double() == doctest::Approx(-0.4385012).epsilon(1e-7));
}

TEST_CASE("large-s log-determinant against the Nystrom route") {
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    for (double s : {400.0, 900.0}) {
      const PrecisionCtx ctx(fredholm::default_bits(s));
      PrecisionScope scope(ctx.guarded());
      const auto e = logdet_series(Real(s), Real(a), ctx);
      CHECK(e.budget.to_double() == doctest::Approx(std::pow(s, -3.0)));
      CHECK(within_budget(e, fredholm::log_fredholm_det(Real(s), a, 0, ctx)));
      CHECK(abs(e.value - logdet_series_nonconstant(Real(s), Real(a), ctx) - logdet_constant(Real(a), ctx))
                .to_double() < 1e-40);
    }
  }
  // Leading terms -s/4 + a sqrt(s) - (a^2/4) log s; the rest is O(s^-1/2).
  const PrecisionCtx ctx(128);
  PrecisionScope scope(ctx.guarded());
  const Real v = logdet_series_nonconstant(Real(1e6), Real(1), ctx);
  CHECK(v.to_double() == doctest::Approx(-250000.0 + 1000.0 - std::log(1e6) / 4).epsilon(1e-8));
}

TEST_CASE("symmetric gap series against the product of determinants") {
  for (double b : {20.0, 30.0}) {
    const double s = b * b;
    const PrecisionCtx ctx(fredholm::default_bits(s));
    PrecisionScope scope(ctx.guarded());
    const auto e = sym_gap_series(Real(b), ctx);
    const Real product = fredholm::log_fredholm_det(Real(s), 0.5, 0, ctx) +
                         fredholm::log_fredholm_det(Real(s), -0.5, 0, ctx);
    CHECK(within_budget(e, product));
    CHECK(abs(e.value - product).to_double() < 1e-3);
  }
}

TEST_CASE("log P expansions against the exact finite-n value") {
  {
    const EnsembleParams p(1, 2, 32);
    const PrecisionCtx ctx(finite_n::default_bits(32, 0.5));
    PrecisionScope scope(ctx.guarded());
    for (double t : {0.25, 0.5}) CHECK(within_budget(logp_large_n(Real(t), p, ctx), finite_n::log_prob_smallest(Real(t), p, ctx)));
  }
  {
    const EnsembleParams p(0.5, 1.5, 30);
    const PrecisionCtx ctx(finite_n::default_bits(30, 0.98));
    PrecisionScope scope(ctx.guarded());
    for (double t : {0.95, 0.98}) {
      const auto e = logp_near_one(Real(t), p, ctx);
      CHECK(e.budget.to_double() == doctest::Approx(1.0 / 30 + (1 - t)));
      CHECK(within_budget(e, finite_n::log_prob_smallest(Real(t), p, ctx)));
    }
  }
}

TEST_CASE("H_n and W_n expansions") {
  const EnsembleParams p(1, 2, 40);
  const PrecisionCtx ctx(finite_n::default_bits(40));
  PrecisionScope scope(ctx.guarded());
  for (double tv : {0.2, 0.36, 0.7}) {
    const Real t = tv;
    const Real he = finite_n::hn_exact(t, p, ctx);
    CHECK(within_budget(hn_series(t, p), he));
    CHECK(hn_series_truncated(t, p, -1) == hn_series(t, p).value);
    // Each further power of n brings the series closer.
    CHECK(abs(hn_series_truncated(t, p, 0) - he) < abs(hn_series_truncated(t, p, 1) - he));
    CHECK(abs(hn_series_truncated(t, p, -1) - he) < abs(hn_series_truncated(t, p, 0) - he));

    const Real we = exact_w(t, p, ctx);
    CHECK(within_budget(wn_series(t, p), we));
    CHECK(wn_series_truncated(t, p, 3) == wn_series(t, p).value);
    CHECK(abs(wn_series_truncated(t, p, 2) - we) < abs(wn_series_truncated(t, p, 1) - we));

    const Real fd = oracle::derivative([&](const Real& s) { return wn_series_truncated(s, p, 3); }, t, Real(1e-10));
    CHECK(abs(wn_series_derivative(t, p) - fd).to_double() < 1e-20);
  }
  CHECK_THROWS_AS(hn_series(Real(0), p), DomainError);
  CHECK_THROWS_AS(wn_series(Real(1), p), DomainError);
  CHECK_THROWS_AS(hn_series_truncated(Real(0.5), p, 3), DomainError);
}

TEST_CASE("argument checks") {
  const PrecisionCtx ctx(128);
  CHECK_THROWS_AS(logdet_series(Real(0), Real(1), ctx), DomainError);
  CHECK_THROWS_AS(sym_gap_series(Real(-2), ctx), DomainError);
}
