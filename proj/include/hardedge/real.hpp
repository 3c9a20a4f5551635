#pragma once

// Extended-precision real number on top of MPFR.
//
// Every freshly created value (default, from a double or integer, or as the
// result of arithmetic) takes the calling thread's working precision, which
// is set for a lexical scope with PrecisionScope. Copies keep the precision
// of their source.

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstring>
#include <string>
#include <string_view>

namespace hardedge {

int working_bits() noexcept;

/// Sets the calling thread's working precision until destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

/// Working precision carried through every numerical operation.
struct PrecisionCtx {
  /// Extra bits each operation uses internally on top of `bits`.
  static constexpr int kGuardBits = 32;

  int bits = 256;

  PrecisionCtx() = default;
  explicit PrecisionCtx(int b);

  int guarded() const noexcept { return bits + kGuardBits; }
  /// Relative tolerance 2^(-bits/2) used for "half precision" checks.
  double half_tolerance_log2() const noexcept { return -bits / 2.0; }
};

class Real {
 public:
  Real() {
    mpfr_init2(v_, working_bits());
    mpfr_set_zero(v_, 1);
  }
  Real(double x) {  // NOLINT(google-explicit-constructor)
    mpfr_init2(v_, working_bits());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  template <std::signed_integral I>
  Real(I x) {  // NOLINT(google-explicit-constructor)
    mpfr_init2(v_, working_bits());
    mpfr_set_si(v_, static_cast<long>(x), MPFR_RNDN);
  }
  template <std::unsigned_integral I>
  Real(I x) {  // NOLINT(google-explicit-constructor)
    mpfr_init2(v_, working_bits());
    mpfr_set_ui(v_, static_cast<unsigned long>(x), MPFR_RNDN);
  }

  /// Parses a decimal string at working precision ("0.1" is exact to the last bit).
  static Real parse(std::string_view text);

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    std::memcpy(v_, o.v_, sizeof(mpfr_t));
    o.v_->_mpfr_d = nullptr;
  }
  Real& operator=(const Real& o) {
    if (this == &o) return *this;
    if (!v_->_mpfr_d) {
      mpfr_init2(v_, mpfr_get_prec(o.v_));
    } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    }
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this == &o) return *this;
    if (v_->_mpfr_d) mpfr_clear(v_);
    std::memcpy(v_, o.v_, sizeof(mpfr_t));
    o.v_->_mpfr_d = nullptr;
    return *this;
  }
  ~Real() {
    if (v_->_mpfr_d) mpfr_clear(v_);
  }

  int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  explicit operator double() const { return to_double(); }
  /// Scientific notation with `digits` significant digits, '.' decimal point.
  std::string str(int digits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1 (0 for zero).
  long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  Real operator-() const {
    Real r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long k);
Real floor(const Real& x);
/// x * 2^k
Real ldexp(const Real& x, long k);
/// log Gamma(x) for x > 0 (MPFR lngamma).
Real lgamma_positive(const Real& x);
/// Riemann zeta at a positive integer.
Real zeta_ui(unsigned long k);
Real pi();
Real euler_gamma();
Real log2pi();
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

}  // namespace hardedge
