#include "ellk/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ellk {

namespace {

const Sqrt2Elem& zero_elem() {
  static const Sqrt2Elem z;
  return z;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// c·n as an integer index, or throw when off the grid
long scaled_index(const mpq_class& c, long n) {
  mpq_class v = c * n;
  if (v.get_den() != 1) throw DomainError("exponent leaves the (1/8)Z grid");
  return v.get_num().get_si();
}

}  // namespace

QSeries::QSeries(long order) : coeffs_(static_cast<std::size_t>(std::max(0L, order))) {}

QSeries QSeries::constant(const Sqrt2Elem& c, long order) {
  QSeries s(order);
  if (order > 0) s.coeffs_[0] = c;
  return s;
}

const Sqrt2Elem& QSeries::operator[](long index) const {
  if (index < 0) return zero_elem();
  if (index >= order()) throw DomainError("coefficient beyond truncation order");
  return coeffs_[index];
}

void QSeries::set(long index, Sqrt2Elem value) {
  if (index < 0 || index >= order()) throw DomainError("index outside truncation order");
  coeffs_[index] = std::move(value);
}

void QSeries::add_at(long index, const Sqrt2Elem& value) {
  if (index < 0 || index >= order()) throw DomainError("index outside truncation order");
  coeffs_[index] += value;
}

long QSeries::valuation() const {
  for (long i = 0; i < order(); ++i)
    if (!coeffs_[i].is_zero()) return i;
  return order();
}

bool QSeries::is_rational() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Sqrt2Elem& c) { return c.is_rational(); });
}

std::vector<long> QSeries::support() const {
  std::vector<long> s;
  for (long i = 0; i < order(); ++i)
    if (!coeffs_[i].is_zero()) s.push_back(i);
  return s;
}

QSeries QSeries::truncated(long new_order) const {
  QSeries r(std::min(new_order, order()));
  for (long i = 0; i < r.order(); ++i) r.coeffs_[i] = coeffs_[i];
  return r;
}

QSeries QSeries::rescaled(const mpq_class& c) const {
  if (c <= 0) throw DomainError("rescale factor must be positive");
  mpq_class bound = c * order();
  mpz_class ceil_bound;
  mpz_cdiv_q(ceil_bound.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  QSeries r(ceil_bound.get_si());
  for (long i : support()) r.coeffs_[scaled_index(c, i)] = coeffs_[i];
  return r;
}

QSeries QSeries::shifted(long shift) const {
  if (shift < 0) throw DomainError("negative shift");
  QSeries r(order() + shift);
  for (long i = 0; i < order(); ++i) r.coeffs_[i + shift] = coeffs_[i];
  return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  long n = std::min(order(), o.order());
  coeffs_.resize(n);
  for (long i = 0; i < n; ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  long n = std::min(order(), o.order());
  coeffs_.resize(n);
  for (long i = 0; i < n; ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

QSeries& QSeries::operator*=(const Sqrt2Elem& c) {
  for (auto& x : coeffs_)
    if (!x.is_zero()) x *= c;
  return *this;
}

QSeries QSeries::operator-() const {
  QSeries r(*this);
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  long va = a.valuation(), vb = b.valuation();
  long ord = std::min(a.order() + vb, b.order() + va);
  QSeries r(ord);
  std::vector<long> sa = a.support(), sb = b.support();
  const QSeries* x = &a;
  const QSeries* y = &b;
  if (sa.size() > sb.size()) {
    std::swap(sa, sb);
    std::swap(x, y);
  }
  Sqrt2Elem prod;
  for (long i : sa) {
    const Sqrt2Elem& xi = x->coeffs_[i];
    for (long j : sb) {
      if (i + j >= ord) break;
      prod = xi;
      prod *= y->coeffs_[j];
      r.coeffs_[i + j] += prod;
    }
  }
  return r;
}

QSeries QSeries::inverse() const {
  if (order() == 0 || coeffs_[0].is_zero()) throw DomainError("series with zero constant term is not invertible");
  QSeries g(order());
  Sqrt2Elem inv0 = coeffs_[0].inverse();
  g.coeffs_[0] = inv0;
  std::vector<long> sf = support();
  for (long n = 1; n < order(); ++n) {
    Sqrt2Elem acc;
    for (long i : sf) {
      if (i == 0) continue;
      if (i > n) break;
      acc += coeffs_[i] * g.coeffs_[n - i];
    }
    g.coeffs_[n] = -(acc * inv0);
  }
  return g;
}

QSeries QSeries::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  QSeries result = constant(Sqrt2Elem(1), order());
  if (n == 0) return result;
  QSeries base = *this;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

bool QSeries::agrees_with(const QSeries& o) const {
  long n = std::min(order(), o.order());
  for (long i = 0; i < n; ++i)
    if (!(coeffs_[i] == o.coeffs_[i])) return false;
  return true;
}

nlohmann::json QSeries::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (long i : support()) entries.push_back({i, coeffs_[i].a().get_str(), coeffs_[i].b().get_str()});
  return {{"grid", kGrid}, {"order", order()}, {"entries", entries}};
}

QSeries QSeries::from_json(const nlohmann::json& j) {
  if (j.at("grid").get<long>() != kGrid) throw DomainError("unsupported q-series grid");
  QSeries s(j.at("order").get<long>());
  for (const auto& e : j.at("entries")) {
    mpq_class a(e.at(1).get<std::string>()), b(e.at(2).get<std::string>());
    a.canonicalize();
    b.canonicalize();
    s.set(e.at(0).get<long>(), Sqrt2Elem(a, b));
  }
  return s;
}

std::string QSeries::to_string(long max_terms) const {
  std::ostringstream out;
  long shown = 0;
  for (long i : support()) {
    if (shown++ == max_terms) {
      out << " + ...";
      break;
    }
    if (shown > 1) out << " + ";
    out << "(" << coeffs_[i].to_string() << ")";
    if (i == 0) continue;
    mpq_class e(i, kGrid);
    e.canonicalize();
    out << "q^" << e.get_str();
  }
  if (shown == 0) out << "0";
  mpq_class o(order(), kGrid);
  o.canonicalize();
  out << " + O(q^" << o.get_str() << ")";
  return out.str();
}

QSeries theta_series(int j, const mpq_class& scale, long order) {
  if (scale <= 0) throw DomainError("theta scale must be positive");
  if (order <= 0) throw DomainError("order must be positive");
  QSeries s(order);
  if (j == 3 || j == 4) {
    s.set(0, 1);
    for (long n = 1;; ++n) {
      long idx = scaled_index(scale * 4, n * n);
      if (idx >= order) break;
      s.set(idx, (j == 4 && n % 2 == 1) ? -2 : 2);
    }
  } else if (j == 2) {
    for (long n = 0;; ++n) {
      long idx = scaled_index(scale, (2 * n + 1) * (2 * n + 1));
      if (idx >= order) break;
      s.set(idx, 2);
    }
  } else {
    throw DomainError("theta index must be 2, 3 or 4");
  }
  return s;
}

QSeries eta_product(const std::vector<std::pair<long, long>>& factors, long order) {
  long weight2 = 0, lead3 = 0;
  for (auto [m, e] : factors) {
    if (m <= 0) throw DomainError("eta multiplier must be positive");
    weight2 += e;
    lead3 += m * e;
  }
  if (weight2 <= 0 || weight2 % 2 != 0) throw DomainError("eta product weight must be a positive integer");
  if (lead3 < 0 || lead3 % 3 != 0) throw DomainError("eta product leading exponent is off the (1/8)Z grid");
  long lead = lead3 / 3;
  QSeries s(order);
  if (lead >= order) return s;
  long terms = ceil_div(order - lead, QSeries::kGrid);
  std::vector<mpz_class> c(terms);
  c[0] = 1;
  for (auto [m, e] : factors) {
    for (long step = m; step < terms; step += m) {
      for (long rep = 0; rep < std::abs(e); ++rep) {
        if (e > 0) {
          for (long i = terms - 1; i >= step; --i) c[i] -= c[i - step];
        } else {
          for (long i = step; i < terms; ++i) c[i] += c[i - step];
        }
      }
    }
  }
  for (long n = 0; n < terms; ++n) {
    long idx = lead + QSeries::kGrid * n;
    if (idx < order && sgn(c[n]) != 0) s.set(idx, mpq_class(c[n]));
  }
  return s;
}

std::vector<mpq_class> eisenstein_coefficients(int k, const CharacterTag& psi, const CharacterTag& phi,
                                               long count) {
  if (k < 1) throw DomainError("Eisenstein weight must be positive");
  if ((psi.odd != phi.odd) != (k % 2 == 1)) throw DomainError("character parity does not match the weight");
  std::vector<mpq_class> a(std::max(1L, count));
  a[0] = psi.label == Character::Trivial ? mpq_class(l_value_at_negative(k, phi) / 2) : mpq_class(0);
  std::vector<mpz_class> acc(a.size());
  for (long d = 1; d < count; ++d) {
    int fd = char_value(phi, d);
    if (fd == 0) continue;
    mpz_class dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
    for (long e = 1; d * e < count; ++e) {
      int pe = char_value(psi, e);
      if (pe == 0) continue;
      if (pe * fd > 0) acc[d * e] += dk; else acc[d * e] -= dk;
    }
  }
  for (long n = 1; n < count; ++n) a[n] = mpq_class(acc[n]);
  a.resize(count);
  return a;
}

QSeries eisenstein_qexp(int k, const CharacterTag& psi, const CharacterTag& phi, long t, long order) {
  if (t <= 0) throw DomainError("Eisenstein rescaling t must be positive");
  long count = ceil_div(order, QSeries::kGrid * t);
  std::vector<mpq_class> a = eisenstein_coefficients(k, psi, phi, count);
  QSeries s(order);
  for (long n = 0; n < count; ++n)
    if (sgn(a[n]) != 0) s.set(QSeries::kGrid * t * n, a[n]);
  return s;
}

QSeries cm_form_qexp(int level, int k, long order) {
  long d = 1;
  mpz_class divisor;
  switch (level) {
    case 4:
      if (k % 4 != 1) throw DomainError("level 4 CM form needs k = 1 mod 4");
      divisor = 4;
      break;
    case 8:
      if (k % 2 != 1) throw DomainError("level 8 CM form needs odd k");
      d = 2;
      divisor = 2;
      break;
    case 16:
      if (k % 4 != 3) throw DomainError("level 16 CM form needs k = 3 mod 4");
      divisor = 2;
      break;
    default:
      throw DomainError("CM level must be 4, 8 or 16");
  }
  long terms = ceil_div(order, QSeries::kGrid);
  std::vector<mpz_class> acc(terms);
  long bound = static_cast<long>(std::sqrt(static_cast<double>(terms))) + 1;
  for (long x = -bound; x <= bound; ++x) {
    for (long y = -bound; y <= bound; ++y) {
      long n = x * x + d * y * y;
      if (n >= terms || n == 0) continue;
      if (level == 16 && (x % 2 == 0 || y % 2 != 0)) continue;
      // real part of (x + y√−d)^{k−1}
      mpz_class re = 1, im = 0;
      for (int p = 0; p < k - 1; ++p) {
        mpz_class nre = re * x - d * im * y;
        mpz_class nim = re * y + im * x;
        re = std::move(nre);
        im = std::move(nim);
      }
      acc[n] += re;
    }
  }
  QSeries s(order);
  for (long n = 1; n < terms; ++n) {
    if (sgn(acc[n]) == 0) continue;
    if (!mpz_divisible_p(acc[n].get_mpz_t(), divisor.get_mpz_t())) throw DomainError("CM lattice sum not integral");
    mpz_class v = acc[n] / divisor;
    s.set(QSeries::kGrid * n, mpq_class(v));
  }
  return s;
}

}  // namespace ellk
