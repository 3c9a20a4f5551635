#include "hardedge/real.hpp"

#include <string>
#include <vector>

#include "hardedge/errors.hpp"

namespace hardedge {

namespace {
thread_local int t_working_bits = 256;
}

int working_bits() noexcept { return t_working_bits; }

PrecisionScope::PrecisionScope(int bits) : saved_(t_working_bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  t_working_bits = bits;
}

PrecisionScope::~PrecisionScope() { t_working_bits = saved_; }

PrecisionCtx::PrecisionCtx(int b) : bits(b) {
  if (b < 53) throw DomainError("PrecisionCtx: bits must be >= 53, got " + std::to_string(b));
}

Real Real::parse(std::string_view text) {
  Real r;
  const std::string s(text);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !r.is_finite()) {
    throw DomainError("cannot parse real number '" + s + "'");
  }
  return r;
}

std::string Real::str(int digits) const {
  if (digits < 1) digits = 1;
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  const int n = mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  }
  return std::string(buf.data());
}

#define HARDEDGE_UNARY(name, mpfr_fn)   \
  Real name(const Real& x) {            \
    Real r;                             \
    mpfr_fn(r.get(), x.get(), MPFR_RNDN); \
    return r;                           \
  }

HARDEDGE_UNARY(abs, mpfr_abs)
HARDEDGE_UNARY(sqrt, mpfr_sqrt)
HARDEDGE_UNARY(log, mpfr_log)
HARDEDGE_UNARY(log1p, mpfr_log1p)
HARDEDGE_UNARY(exp, mpfr_exp)
HARDEDGE_UNARY(expm1, mpfr_expm1)
HARDEDGE_UNARY(sin, mpfr_sin)
HARDEDGE_UNARY(cos, mpfr_cos)
HARDEDGE_UNARY(lgamma_positive, mpfr_lngamma)

#undef HARDEDGE_UNARY

Real floor(const Real& x) {
  Real r;
  mpfr_floor(r.get(), x.get());
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r;
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long k) {
  Real r;
  mpfr_pow_si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real ldexp(const Real& x, long k) {
  Real r;
  mpfr_mul_2si(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

Real zeta_ui(unsigned long k) {
  Real r;
  mpfr_zeta_ui(r.get(), k, MPFR_RNDN);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real euler_gamma() {
  Real r;
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

Real log2pi() { return log(ldexp(pi(), 1)); }

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace hardedge
