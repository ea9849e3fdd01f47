#include "ellk/real.hpp"

#include <climits>
#include <cmath>
#include <memory>
#include <utility>

namespace ellk {

namespace {
constexpr double kLog2Of10 = 3.32192809488736234787;
}

Precision Precision::from_bits(long bits) {
  if (bits < 16) throw DomainError("precision below 16 bits");
  return Precision(bits);
}

Precision Precision::from_digits(long digits) {
  if (digits < 5) throw DomainError("precision below 5 digits");
  return Precision(static_cast<long>(std::ceil(digits * kLog2Of10)) + 4);
}

long Precision::digits() const { return static_cast<long>(std::floor((bits_ - 4) / kLog2Of10)); }

Precision Precision::scaled(double factor) const {
  return Precision(static_cast<long>(std::ceil(bits_ * factor)));
}

Real::Real() : Real(static_cast<mpfr_prec_t>(64)) {}

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.prec());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  // steal the limbs and leave other as a valid 2-bit zero
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_double(double value, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_d(r.value_, value, MPFR_RNDN);
  return r;
}

Real Real::from_string(std::string_view text, mpfr_prec_t prec) {
  Real r(prec);
  std::string s(text);
  if (mpfr_set_str(r.value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw DomainError("not a decimal number: " + s);
  }
  return r;
}

Real Real::from_rational(const mpq_class& q, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_q(r.value_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real Real::from_integer(const mpz_class& z, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_z(r.value_, z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

Real Real::ln2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.value_, MPFR_RNDN);
  return r;
}

Real Real::with_prec(mpfr_prec_t prec) const {
  Real r(prec);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

long Real::exponent() const {
  if (is_zero()) return LONG_MIN;
  return mpfr_get_exp(value_);
}

mpz_class Real::round_to_integer() const {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDN);
  return z;
}

std::string Real::to_string(int digits) const {
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  if (digits < 1) digits = 1;
  std::unique_ptr<char[]> buf(new char[digits + 64]);
  std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  mpfr_snprintf(buf.get(), digits + 64, fmt.c_str(), value_);
  return buf.get();
}

double Real::log10_abs() const {
  if (is_zero()) return -INFINITY;
  long e;
  double m = mpfr_get_d_2exp(&e, value_, MPFR_RNDN);
  return std::log10(std::fabs(m)) + e * 0.30102999566398119521;
}

Real& Real::operator+=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(value_, o.prec(), MPFR_RNDN);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(value_, o.prec(), MPFR_RNDN);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(value_, o.prec(), MPFR_RNDN);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(value_, o.prec(), MPFR_RNDN);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}
Real& Real::operator+=(long o) { mpfr_add_si(value_, value_, o, MPFR_RNDN); return *this; }
Real& Real::operator-=(long o) { mpfr_sub_si(value_, value_, o, MPFR_RNDN); return *this; }
Real& Real::operator*=(long o) { mpfr_mul_si(value_, value_, o, MPFR_RNDN); return *this; }
Real& Real::operator/=(long o) { mpfr_div_si(value_, value_, o, MPFR_RNDN); return *this; }
Real& Real::operator*=(const mpz_class& o) {
  mpfr_mul_z(value_, value_, o.get_mpz_t(), MPFR_RNDN);
  return *this;
}
Real& Real::mul_2exp(long e) {
  mpfr_mul_2si(value_, value_, e, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

namespace {
mpfr_prec_t joint(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}

Real operator+(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(joint(a, b));
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.prec());
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define ELLK_UNARY(name, call)             \
  Real name(const Real& x) {               \
    Real r(x.prec());                      \
    call(r.raw(), x.raw(), MPFR_RNDN);     \
    return r;                              \
  }

ELLK_UNARY(abs, mpfr_abs)
ELLK_UNARY(sqrt, mpfr_sqrt)
ELLK_UNARY(exp, mpfr_exp)
ELLK_UNARY(expm1, mpfr_expm1)
ELLK_UNARY(log, mpfr_log)
ELLK_UNARY(log1p, mpfr_log1p)
ELLK_UNARY(sinh, mpfr_sinh)
ELLK_UNARY(cosh, mpfr_cosh)
ELLK_UNARY(tanh, mpfr_tanh)
ELLK_UNARY(asinh, mpfr_asinh)
ELLK_UNARY(sin, mpfr_sin)
ELLK_UNARY(cos, mpfr_cos)

#undef ELLK_UNARY

Real pow(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

Real root(const Real& x, unsigned long n) {
  Real r(x.prec());
  mpfr_rootn_ui(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real two_pow(long e, mpfr_prec_t prec) {
  Real r(1, prec);
  r.mul_2exp(e);
  return r;
}

Real ulp(const Real& x) {
  if (x.is_zero()) {
    Real r(BigReal::kRadiusPrec);
    mpfr_set_ui_2exp(r.raw(), 1, mpfr_get_emin(), MPFR_RNDU);
    return r;
  }
  Real r(BigReal::kRadiusPrec);
  mpfr_set_ui_2exp(r.raw(), 1, x.exponent() - x.prec(), MPFR_RNDU);
  return r;
}

Real err_zero() { return Real(BigReal::kRadiusPrec); }

Real err_from(const Real& x) {
  Real r(BigReal::kRadiusPrec);
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDU);
  return r;
}

Real err_add(const Real& a, const Real& b) {
  Real r(BigReal::kRadiusPrec);
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

Real err_mul(const Real& a, const Real& b) {
  Real r(BigReal::kRadiusPrec);
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDU);
  return r;
}

BigReal::BigReal() : value_(), err_(err_zero()) {}

BigReal::BigReal(Real value, Real err) : value_(std::move(value)), err_(err_from(err)) {}

BigReal::BigReal(Real exact_value) : value_(std::move(exact_value)), err_(ulp(value_)) {}

bool BigReal::agrees_with(const BigReal& other) const {
  Real d = err_from(value_ - other.value_);
  return d <= err_add(err_, other.err_);
}

double BigReal::correct_digits() const {
  if (err_.is_zero()) return static_cast<double>(Precision::from_bits(prec()).digits());
  return value_.log10_abs() - err_.log10_abs();
}

std::string BigReal::to_string(int digits) const { return value_.to_string(digits); }

std::string BigReal::err_string() const { return err_.to_string(3); }

BigReal& BigReal::add_err(const Real& extra) {
  err_ = err_add(err_, err_from(extra));
  return *this;
}

BigReal BigReal::operator-() const { return BigReal(-value_, err_); }

BigReal operator+(const BigReal& a, const BigReal& b) {
  Real v = a.value_ + b.value_;
  Real e = err_add(err_add(a.err_, b.err_), ulp(v));
  return BigReal(std::move(v), std::move(e));
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  Real v = a.value_ - b.value_;
  Real e = err_add(err_add(a.err_, b.err_), ulp(v));
  return BigReal(std::move(v), std::move(e));
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  Real v = a.value_ * b.value_;
  Real e = err_add(err_mul(err_from(a.value_), b.err_), err_mul(err_from(b.value_), a.err_));
  e = err_add(e, err_mul(a.err_, b.err_));
  e = err_add(e, ulp(v));
  return BigReal(std::move(v), std::move(e));
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  Real bm(BigReal::kRadiusPrec);
  mpfr_abs(bm.raw(), b.value_.raw(), MPFR_RNDD);
  Real gap(BigReal::kRadiusPrec);
  mpfr_sub(gap.raw(), bm.raw(), b.err_.raw(), MPFR_RNDD);
  if (gap.sign() <= 0) throw DomainError("division by an interval containing zero");
  Real v = a.value_ / b.value_;
  // |a/b − ã/b̃| ≤ (err_a + |a/b|·err_b) / (|b| − err_b)
  Real num = err_add(a.err_, err_mul(err_from(v), b.err_));
  Real e(BigReal::kRadiusPrec);
  mpfr_div(e.raw(), num.raw(), gap.raw(), MPFR_RNDU);
  e = err_add(e, ulp(v));
  return BigReal(std::move(v), std::move(e));
}

BigReal operator*(const BigReal& a, const mpq_class& q) {
  Real qr = Real::from_rational(q, a.prec());
  Real v = a.value_ * qr;
  Real e = err_add(err_mul(a.err_, err_from(qr)), ulp(v));
  e = err_add(e, err_mul(err_from(a.value_), ulp(qr)));
  return BigReal(std::move(v), std::move(e));
}

}  // namespace ellk
