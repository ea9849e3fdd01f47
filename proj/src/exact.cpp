#include "ellk/exact.hpp"

#include "ellk/numerics.hpp"

#include <algorithm>
#include <cctype>

namespace ellk {

Sqrt2Elem Sqrt2Elem::sqrt2_pow(long e) {
  long half = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(std::abs(half)));
  mpq_class scale = half >= 0 ? mpq_class(two_pow) : mpq_class(1, two_pow);
  scale.canonicalize();
  bool odd = (e - 2 * half) == 1;
  return odd ? Sqrt2Elem(0, scale) : Sqrt2Elem(scale, 0);
}

Sqrt2Elem& Sqrt2Elem::operator*=(const Sqrt2Elem& o) {
  if (is_rational() && o.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  mpq_class a = a_ * o.a_ + 2 * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

Sqrt2Elem Sqrt2Elem::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(sqrt2)");
  mpq_class n = norm();
  return Sqrt2Elem(a_ / n, -b_ / n);
}

int Sqrt2Elem::sign() const {
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a² with 2b²
  int c = cmp(a_ * a_, 2 * b_ * b_);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

Real Sqrt2Elem::to_real(mpfr_prec_t prec) const {
  Real r = Real::from_rational(a_, prec + 8);
  if (sgn(b_) != 0) r += Real::from_rational(b_, prec + 8) * sqrt(Real(2, prec + 8));
  return r.with_prec(prec);
}

std::string Sqrt2Elem::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  std::string s;
  if (sgn(a_) != 0) s = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  return s + b_.get_str() + "*sqrt2";
}

Sqrt2Elem parse_sqrt2(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw DomainError("empty number");
  Sqrt2Elem out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string term = text.substr(pos, end - pos);
    pos = end;
    bool negative = false;
    if (term[0] == '+' || term[0] == '-') {
      negative = term[0] == '-';
      term.erase(0, 1);
    }
    bool radical = false;
    auto at = term.find("sqrt2");
    if (at != std::string::npos) {
      radical = true;
      term.erase(at, 5);
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (!term.empty() && term.front() == '*') term.erase(0, 1);
      if (term.empty()) term = "1";
    }
    mpq_class q;
    if (q.set_str(term, 10) != 0) throw DomainError("cannot parse number: " + raw);
    q.canonicalize();
    if (negative) q = -q;
    out += radical ? Sqrt2Elem(0, q) : Sqrt2Elem(q);
  }
  return out;
}

CharacterTag CharacterTag::of(Character c) {
  switch (c) {
    case Character::Trivial: return {c, 1, 1, false, 1};
    case Character::ChiM4: return {c, 4, 4, true, -4};
    case Character::Chi8: return {c, 8, 8, false, 8};
    case Character::ChiM8: return {c, 8, 8, true, -8};
  }
  throw DomainError("unknown character");
}

CharacterTag CharacterTag::from_discriminant(int D) {
  switch (D) {
    case 1: return of(Character::Trivial);
    case -4: return of(Character::ChiM4);
    case 8: return of(Character::Chi8);
    case -8: return of(Character::ChiM8);
    default: throw DomainError("unsupported character discriminant " + std::to_string(D));
  }
}

std::string CharacterTag::name() const {
  switch (label) {
    case Character::Trivial: return "1";
    case Character::ChiM4: return "-4";
    case Character::Chi8: return "8";
    case Character::ChiM8: return "-8";
  }
  return "?";
}

int char_value(const CharacterTag& chi, long n) { return kronecker(chi.discriminant, n); }

long GaussSumValue::magnitude_squared() const {
  Sqrt2Elem sq = magnitude * magnitude;
  return sq.a().get_num().get_si();
}

GaussSumValue gauss_sum(const CharacterTag& chi) {
  switch (chi.label) {
    case Character::Trivial: return {Sqrt2Elem(1), false};
    case Character::ChiM4: return {Sqrt2Elem(2), true};
    case Character::Chi8: return {Sqrt2Elem(0, 2), false};
    case Character::ChiM8: return {Sqrt2Elem(0, 2), true};
  }
  throw DomainError("unknown character");
}

mpq_class generalized_bernoulli(unsigned k, const CharacterTag& chi) {
  long f = chi.conductor;
  mpq_class sum = 0;
  for (long a = 1; a <= f; ++a) {
    int c = char_value(chi, a);
    if (c == 0) continue;
    mpq_class b = bernoulli_poly(k, mpq_class(a, f));
    sum += c > 0 ? b : mpq_class(-b);
  }
  mpz_class fk;
  mpz_ui_pow_ui(fk.get_mpz_t(), static_cast<unsigned long>(f), k - 1);
  return sum * fk;
}

mpq_class l_value_at_negative(unsigned k, const CharacterTag& chi) {
  if (k == 0) throw DomainError("k must be positive");
  return -generalized_bernoulli(k, chi) / k;
}

namespace {

// Row reduction to reduced echelon form; returns pivot columns.
std::vector<std::size_t> reduce(Sqrt2Matrix& A, std::size_t columns) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < columns && row < A.size(); ++col) {
    std::size_t p = row;
    while (p < A.size() && A[p][col].is_zero()) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[row]);
    Sqrt2Elem inv = A[row][col].inverse();
    for (auto& x : A[row])
      if (!x.is_zero()) x *= inv;
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      Sqrt2Elem f = A[r][col];
      for (std::size_t c = col; c < A[r].size(); ++c)
        if (!A[row][c].is_zero()) A[r][c] -= f * A[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Sqrt2Elem>> solve_exact(Sqrt2Matrix A, std::vector<Sqrt2Elem> b, long* bad_row) {
  if (A.size() != b.size()) throw DomainError("solve_exact: row count mismatch");
  std::size_t n = A.empty() ? 0 : A.front().size();
  for (std::size_t r = 0; r < A.size(); ++r) {
    A[r].resize(n);
    A[r].push_back(b[r]);
  }
  std::vector<std::size_t> pivots = reduce(A, n);
  for (std::size_t r = pivots.size(); r < A.size(); ++r) {
    if (!A[r][n].is_zero()) {
      if (bad_row) *bad_row = static_cast<long>(r);
      return std::nullopt;
    }
  }
  std::vector<Sqrt2Elem> x(n);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = A[i][n];
  return x;
}

std::vector<std::vector<Sqrt2Elem>> nullspace_exact(Sqrt2Matrix A, std::size_t columns) {
  for (auto& row : A) row.resize(columns);
  std::vector<std::size_t> pivots = reduce(A, columns);
  std::vector<std::vector<Sqrt2Elem>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Sqrt2Elem> v(columns);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -A[i][free];
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      Sqrt2Elem inv = x.inverse();
      for (auto& y : v) y *= inv;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace ellk
