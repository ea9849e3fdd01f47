#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellk {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Working precision in bits. Decimal digits convert with a small rounding guard.
class Precision {
 public:
  static Precision from_bits(long bits);
  static Precision from_digits(long digits);

  long bits() const { return bits_; }
  long digits() const;
  Precision plus_bits(long extra) const { return from_bits(bits_ + extra); }
  Precision scaled(double factor) const;

  auto operator<=>(const Precision&) const = default;

 private:
  explicit Precision(long bits) : bits_(bits) {}
  long bits_;
};

class Real {
 public:
  Real();
  explicit Real(mpfr_prec_t prec);
  Real(long value, mpfr_prec_t prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real from_double(double value, mpfr_prec_t prec);
  static Real from_string(std::string_view text, mpfr_prec_t prec);
  static Real from_rational(const mpq_class& q, mpfr_prec_t prec);
  static Real from_integer(const mpz_class& z, mpfr_prec_t prec);
  static Real pi(mpfr_prec_t prec);
  static Real ln2(mpfr_prec_t prec);

  mpfr_ptr raw() { return value_; }
  mpfr_srcptr raw() const { return value_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(value_); }
  Real with_prec(mpfr_prec_t prec) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  long exponent() const;  // x = m·2^e with 1/2 ≤ |m| < 1; LONG_MIN for zero
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  mpz_class round_to_integer() const;
  // Decimal text with the given number of significant digits.
  std::string to_string(int digits) const;
  // log10 of |x| as a double (−inf for 0).
  double log10_abs() const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(long o);
  Real& operator-=(long o);
  Real& operator*=(long o);
  Real& operator/=(long o);
  Real& operator*=(const mpz_class& o);
  Real& mul_2exp(long e);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b) { Real r(a); r += b; return r; }
  friend Real operator-(const Real& a, long b) { Real r(a); r -= b; return r; }
  friend Real operator*(const Real& a, long b) { Real r(a); r *= b; return r; }
  friend Real operator/(const Real& a, long b) { Real r(a); r /= b; return r; }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator/(long a, const Real& b);

  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real asinh(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long n);
Real pow(const Real& x, const Real& y);
Real root(const Real& x, unsigned long n);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
// 2^e at the given precision.
Real two_pow(long e, mpfr_prec_t prec);
// One unit in the last place of x at its own precision (the smallest normal for 0).
Real ulp(const Real& x);

// A real value with an upper bound on its absolute error. The radius is kept at
// a low fixed precision and is always rounded upward.
class BigReal {
 public:
  static constexpr mpfr_prec_t kRadiusPrec = 64;

  BigReal();
  BigReal(Real value, Real err);
  explicit BigReal(Real exact_value);  // error of one rounding unit

  const Real& value() const { return value_; }
  const Real& err() const { return err_; }
  mpfr_prec_t prec() const { return value_.prec(); }

  // |a − b| ≤ err(a) + err(b)
  bool agrees_with(const BigReal& other) const;
  // Number of correct decimal digits implied by the error bound (relative).
  double correct_digits() const;
  std::string to_string(int digits) const;
  std::string err_string() const;

  BigReal& add_err(const Real& extra);

  BigReal operator-() const;
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const mpq_class& q);

 private:
  Real value_;
  Real err_;
};

// Radius helpers (rounded upward, low precision).
Real err_zero();
Real err_from(const Real& x);        // |x| rounded up
Real err_add(const Real& a, const Real& b);
Real err_mul(const Real& a, const Real& b);

}  // namespace ellk
