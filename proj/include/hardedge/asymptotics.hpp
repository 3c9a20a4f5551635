#pragma once

// Truncated asymptotic expansions with an explicit error budget.
//
// Each evaluator returns the value of all printed terms together with the
// magnitude of the first omitted order (unit constant). Callers compare
// against |value - truth| <= C * budget with an order-one C.

#include <string>

#include "hardedge/finite_n.hpp"
#include "hardedge/real.hpp"

namespace hardedge::asymptotics {

struct ExpansionResult {
  Real value;
  Real budget;        // >= 0
  std::string order;  // e.g. "through s^(-5/2)"
};

/// log det(I - K_Bessel) on (0, s) for large s: all terms through s^(-5/2)
/// including the constant log G(alpha+1) - (alpha/2) log 2pi; budget s^-3.
ExpansionResult logdet_series(const Real& s, const Real& alpha, const PrecisionCtx& ctx);

/// The s-dependent part of logdet_series (everything except the constant).
Real logdet_series_nonconstant(const Real& s, const Real& alpha, const PrecisionCtx& ctx);

/// Constant term log G(alpha+1) - (alpha/2) log 2pi.
Real logdet_constant(const Real& alpha, const PrecisionCtx& ctx);

/// log P(t) for large n and t near 1; budget 1/n + |1 - t|.
ExpansionResult logp_near_one(const Real& t, const finite_n::EnsembleParams& params, const PrecisionCtx& ctx);

/// log P(t) for large n and any fixed t; budget 1/n + 1/(n sqrt t).
ExpansionResult logp_large_n(const Real& t, const finite_n::EnsembleParams& params, const PrecisionCtx& ctx);

/// H_n(t) through the 1/n term; budget 1/(n^2 t).
ExpansionResult hn_series(const Real& t, const finite_n::EnsembleParams& params);

/// H_n(t) truncated after a given power of n: `last_power` in {2, 1, 0, -1}.
Real hn_series_truncated(const Real& t, const finite_n::EnsembleParams& params, int last_power);

/// W_n(t) through n^-3; budget n^-4.
ExpansionResult wn_series(const Real& t, const finite_n::EnsembleParams& params);

/// W_n(t) truncated after n^-`last_order` (1, 2 or 3).
Real wn_series_truncated(const Real& t, const finite_n::EnsembleParams& params, int last_order);

/// d/dt of the n^-3-truncated W_n series.
Real wn_series_derivative(const Real& t, const finite_n::EnsembleParams& params);

/// Symmetric-weight gap probability log for the interval (-b/n, b/n) as
/// n -> infinity: -b^2/2 - (log b)/4 + (log 2)/12 + 3 zeta'(-1)
/// + 1/(32 b^2) + 5/(128 b^4); budget b^-6.
ExpansionResult sym_gap_series(const Real& b, const PrecisionCtx& ctx);

/// Constant (log 2)/12 + 3 zeta'(-1) of sym_gap_series.
Real sym_gap_constant(const PrecisionCtx& ctx);

}  // namespace hardedge::asymptotics
