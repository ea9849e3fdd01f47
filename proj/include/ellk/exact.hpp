#pragma once

#include "ellk/real.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace ellk {

// a + b√2 with rational a, b.
class Sqrt2Elem {
 public:
  Sqrt2Elem() : a_(0), b_(0) {}
  Sqrt2Elem(long a) : a_(a), b_(0) {}  // NOLINT(google-explicit-constructor)
  Sqrt2Elem(mpq_class a) : a_(std::move(a)), b_(0) {}  // NOLINT(google-explicit-constructor)
  Sqrt2Elem(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {}

  static Sqrt2Elem sqrt2() { return Sqrt2Elem(0, 1); }
  // (√2)^e for any integer e
  static Sqrt2Elem sqrt2_pow(long e);

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  // a² − 2b²
  mpq_class norm() const { return a_ * a_ - 2 * b_ * b_; }
  Sqrt2Elem conjugate() const { return Sqrt2Elem(a_, -b_); }
  Sqrt2Elem inverse() const;
  int sign() const;  // sign of the real number a + b√2

  Real to_real(mpfr_prec_t prec) const;
  std::string to_string() const;

  Sqrt2Elem& operator+=(const Sqrt2Elem& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Sqrt2Elem& operator-=(const Sqrt2Elem& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Sqrt2Elem& operator*=(const Sqrt2Elem& o);
  Sqrt2Elem& operator/=(const Sqrt2Elem& o) { return *this *= o.inverse(); }
  Sqrt2Elem operator-() const { return Sqrt2Elem(-a_, -b_); }

  friend Sqrt2Elem operator+(Sqrt2Elem x, const Sqrt2Elem& y) { return x += y; }
  friend Sqrt2Elem operator-(Sqrt2Elem x, const Sqrt2Elem& y) { return x -= y; }
  friend Sqrt2Elem operator*(Sqrt2Elem x, const Sqrt2Elem& y) { return x *= y; }
  friend Sqrt2Elem operator/(Sqrt2Elem x, const Sqrt2Elem& y) { return x /= y; }
  friend bool operator==(const Sqrt2Elem& x, const Sqrt2Elem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  mpq_class a_;
  mpq_class b_;
};

// Parses "p/q", "a+b*sqrt2", "-3/4*sqrt2" and similar.
Sqrt2Elem parse_sqrt2(const std::string& text);

enum class Character { Trivial, ChiM4, Chi8, ChiM8 };

struct CharacterTag {
  Character label;
  int modulus;
  int conductor;
  bool odd;
  int discriminant;  // 1, −4, 8, −8

  static CharacterTag of(Character c);
  static CharacterTag from_discriminant(int D);
  std::string name() const;
  friend bool operator==(const CharacterTag& x, const CharacterTag& y) { return x.label == y.label; }
};

int char_value(const CharacterTag& chi, long n);

// g(χ) = magnitude·(i if imaginary), magnitude = √|D| stored as an element of ℚ(√2).
struct GaussSumValue {
  Sqrt2Elem magnitude;
  bool imaginary;
  long magnitude_squared() const;
};

GaussSumValue gauss_sum(const CharacterTag& chi);

// B_{k,χ} = f^{k−1} Σ_{a=1}^{f} χ(a) B_k(a/f)
mpq_class generalized_bernoulli(unsigned k, const CharacterTag& chi);
// L(1−k, χ) = −B_{k,χ}/k
mpq_class l_value_at_negative(unsigned k, const CharacterTag& chi);

using Sqrt2Matrix = std::vector<std::vector<Sqrt2Elem>>;

// Solves A·x = b exactly. Returns nullopt when the system is inconsistent; the
// index of the first violated row is written to bad_row if given.
std::optional<std::vector<Sqrt2Elem>> solve_exact(Sqrt2Matrix A, std::vector<Sqrt2Elem> b,
                                                  long* bad_row = nullptr);
// Basis of {x : A·x = 0}, each vector scaled so its first nonzero entry is 1.
std::vector<std::vector<Sqrt2Elem>> nullspace_exact(Sqrt2Matrix A, std::size_t columns);

}  // namespace ellk
