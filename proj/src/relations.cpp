#include "ellk/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ellk {

std::string to_string(PslqStatus s) {
  switch (s) {
    case PslqStatus::Found: return "found";
    case PslqStatus::NoneFound: return "none";
    case PslqStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

using Z = mpz_class;

Z shr(const Z& x, long p) {
  Z r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(p));
  return r;
}
Z shl(const Z& x, long p) {
  Z r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), static_cast<mp_bitcnt_t>(p));
  return r;
}
Z fdiv(const Z& a, const Z& b) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
Z isqrt_fixed(const Z& x, long p) {
  Z r;
  Z s = shl(x, p);
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return r;
}
Z round_fixed(const Z& x, long p) { return shl(shr(x + shl(Z(1), p - 1), p), p); }

Z to_fixed(const Real& v, long p) {
  Real t = v;
  t.mul_2exp(p);
  Z z;
  mpfr_get_z(z.get_mpz_t(), t.raw(), MPFR_RNDN);
  return z;
}

double digits_of(Precision prec) { return static_cast<double>(prec.bits()) * std::log10(2.0); }

bool enough_digits(std::size_t n, Precision prec, const Z& max_height) {
  double lh = std::log10(std::max(2.0, max_height.get_d()));
  return digits_of(prec) >= static_cast<double>(n) * lh + 20;
}

}  // namespace

namespace {

// content 1, first nonzero entry positive
void normalize_integers(std::vector<Z>& c) {
  Z g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return;
  for (const auto& x : c)
    if (x != 0) {
      if (x < 0) g = -g;
      break;
    }
  for (auto& x : c) x /= g;
}

// A ℤ[√2]-relation that is a multiple of a rational one is replaced by that one.
void reduce_rational_multiple(std::vector<Sqrt2Elem>& c) {
  const Sqrt2Elem* lead = nullptr;
  for (const auto& e : c)
    if (!e.is_zero()) {
      lead = &e;
      break;
    }
  if (!lead) return;
  Sqrt2Elem inv = lead->inverse();
  std::vector<mpq_class> ratios;
  for (const auto& e : c) {
    Sqrt2Elem r = e * inv;
    if (!r.is_rational()) return;
    ratios.push_back(r.a());
  }
  Z l = 1;
  for (const auto& q : ratios) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = Sqrt2Elem(mpq_class(ratios[j] * l));
}

}  // namespace

PslqOutcome pslq(const std::vector<Real>& values, Precision prec, const Z& max_height) {
  const std::size_t n = values.size();
  PslqOutcome out;
  if (n < 2) throw DomainError("pslq needs at least two values");
  const long P = prec.bits() + 60;
  Real scale(0, prec.bits());
  for (const auto& v : values) scale = max(scale, abs(v));
  if (scale.is_zero()) throw DomainError("pslq: all values are zero");

  // tolerance 10^{−0.7·digits} on normalized values
  Real tol_r = pow(Real(10, P), Real::from_double(-0.7 * digits_of(prec), P));
  Z tol = std::max(to_fixed(tol_r, P), Z(1));

  std::vector<Z> x(n + 1);
  for (std::size_t i = 0; i < n; ++i) x[i + 1] = to_fixed(values[i].with_prec(P) / scale.with_prec(P), P);
  Z minx = abs(x[1]);
  for (std::size_t i = 2; i <= n; ++i) minx = std::min(minx, Z(abs(x[i])));
  if (minx == 0 || minx < tol / 100) {
    // a value is numerically zero: the unit relation on it
    for (std::size_t i = 1; i <= n; ++i)
      if (abs(x[i]) < tol) {
        out.status = PslqStatus::Found;
        out.coeffs.assign(n, Z(0));
        out.coeffs[i - 1] = 1;
        return out;
      }
  }

  const Z g = isqrt_fixed(fdiv(shl(Z(4), P), Z(3)), P);
  auto mat = [n] { return std::vector<std::vector<Z>>(n + 1, std::vector<Z>(n + 1)); };
  auto A = mat(), B = mat(), H = mat();
  for (std::size_t i = 1; i <= n; ++i) {
    A[i][i] = shl(Z(1), P);
    B[i][i] = shl(Z(1), P);
  }
  std::vector<Z> s(n + 2), y(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    Z t = 0;
    for (std::size_t j = k; j <= n; ++j) t += shr(x[j] * x[j], P);
    s[k] = isqrt_fixed(t, P);
  }
  Z t1 = s[1];
  for (std::size_t k = 1; k <= n; ++k) {
    y[k] = fdiv(shl(x[k], P), t1);
    s[k] = fdiv(shl(s[k], P), t1);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (i <= n - 1) H[i][i] = s[i] != 0 ? fdiv(shl(s[i + 1], P), s[i]) : Z(0);
    for (std::size_t j = 1; j < i; ++j) {
      Z sjj = s[j] * s[j + 1];
      H[i][j] = sjj != 0 ? fdiv(shl(-y[i] * y[j], P), sjj) : Z(0);
    }
  }
  auto reduce_step = [&](std::size_t i, std::size_t j, const Z& t) {
    y[j] += shr(t * y[i], P);
    for (std::size_t k = 1; k <= j; ++k) H[i][k] -= shr(t * H[j][k], P);
    for (std::size_t k = 1; k <= n; ++k) {
      A[i][k] -= shr(t * A[j][k], P);
      B[k][j] += shr(t * B[k][i], P);
    }
  };
  for (std::size_t i = 2; i <= n; ++i)
    for (std::size_t j = i - 1; j >= 1; --j) {
      if (H[j][j] != 0) reduce_step(i, j, round_fixed(fdiv(shl(H[i][j], P), H[j][j]), P));
    }

  const long max_steps = 4000 * static_cast<long>(n);
  bool bound_reached = false;
  for (long rep = 0; rep < max_steps; ++rep) {
    out.iterations = rep + 1;
    std::size_t m = 0;
    Z szmax = -1;
    Z gp = g;
    for (std::size_t i = 1; i + 1 <= n; ++i) {
      if (H[i][i] != 0) {
        Z sz = shr(gp * abs(H[i][i]), P * static_cast<long>(i));
        if (sz > szmax) {
          m = i;
          szmax = sz;
        }
      }
      gp *= g;
    }
    if (m == 0) break;
    std::swap(y[m], y[m + 1]);
    std::swap(H[m], H[m + 1]);
    std::swap(A[m], A[m + 1]);
    for (std::size_t i = 1; i <= n; ++i) std::swap(B[i][m], B[i][m + 1]);
    if (m + 2 <= n) {
      Z t0 = isqrt_fixed(shr(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1], P), P);
      if (t0 == 0) break;
      Z c1 = fdiv(shl(H[m][m], P), t0);
      Z c2 = fdiv(shl(H[m][m + 1], P), t0);
      for (std::size_t i = m; i <= n; ++i) {
        Z t3 = H[i][m], t4 = H[i][m + 1];
        H[i][m] = shr(c1 * t3 + c2 * t4, P);
        H[i][m + 1] = shr(-c2 * t3 + c1 * t4, P);
      }
    }
    for (std::size_t i = m + 1; i <= n; ++i) {
      for (std::size_t j = std::min(i - 1, m + 1); j >= 1; --j) {
        if (H[j][j] == 0) break;
        reduce_step(i, j, round_fixed(fdiv(shl(H[i][j], P), H[j][j]), P));
      }
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (abs(y[i]) < tol) {
        std::vector<Z> vec(n);
        Z hmax = 0;
        for (std::size_t j = 1; j <= n; ++j) {
          vec[j - 1] = shr(round_fixed(B[j][i], P), P);
          hmax = std::max(hmax, Z(abs(vec[j - 1])));
        }
        if (hmax <= max_height && hmax > 0) {
          normalize_integers(vec);
          out.status = PslqStatus::Found;
          out.coeffs = std::move(vec);
          return out;
        }
      }
    }
    Z recnorm = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = 1; j <= n; ++j) recnorm = std::max(recnorm, Z(abs(H[i][j])));
    if (recnorm != 0) {
      Z norm = shr(fdiv(shl(Z(1), 2 * P), recnorm), P) / 100;
      if (norm >= max_height) {
        bound_reached = true;
        break;
      }
    }
  }
  out.coeffs.clear();
  if (!enough_digits(n, prec, max_height) || !bound_reached)
    out.status = PslqStatus::Inconclusive;
  else
    out.status = PslqStatus::NoneFound;
  return out;
}

PslqOutcome relation_over_sqrt2_raw(const std::vector<Real>& values, Precision prec, const Z& max_height,
                                    std::vector<Sqrt2Elem>& folded) {
  const mpfr_prec_t wp = prec.bits() + 16;
  Real r2 = sqrt(Real(2, wp));
  std::vector<Real> wide;
  for (const auto& v : values) {
    wide.push_back(v.with_prec(wp));
    wide.push_back(v.with_prec(wp) * r2);
  }
  PslqOutcome o = pslq(wide, prec, max_height);
  folded.clear();
  if (o.status == PslqStatus::Found)
    for (std::size_t j = 0; j < values.size(); ++j)
      folded.emplace_back(mpq_class(o.coeffs[2 * j]), mpq_class(o.coeffs[2 * j + 1]));
  reduce_rational_multiple(folded);
  return o;
}

namespace {

Real combine(const std::vector<Sqrt2Elem>& c, const std::vector<Real>& v, mpfr_prec_t wp, Real* largest) {
  Real acc(0, wp);
  Real big(0, wp);
  for (std::size_t j = 0; j < c.size(); ++j) {
    Real term = c[j].to_real(wp) * v[j].with_prec(wp);
    big = max(big, abs(term));
    acc += term;
  }
  if (largest) *largest = big;
  return abs(acc);
}

std::vector<Real> plain(const std::vector<BigReal>& v) {
  std::vector<Real> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}

Z height_of(const std::vector<Sqrt2Elem>& c) {
  Z h = 0;
  for (const auto& e : c) {
    h = std::max(h, Z(abs(e.a().get_num())));
    h = std::max(h, Z(abs(e.b().get_num())));
  }
  return h;
}

std::string join_coeffs(const std::vector<Sqrt2Elem>& c) {
  std::ostringstream os;
  os << "[";
  for (std::size_t j = 0; j < c.size(); ++j) os << (j ? ", " : "") << c[j].to_string();
  os << "]";
  return os.str();
}

}  // namespace

nlohmann::json Relation::to_json() const {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& e : coeffs) c.push_back({e.a().get_str(), e.b().get_str()});
  return {{"coeffs", c},
          {"height", height.get_str()},
          {"residual", residual.to_string(6)},
          {"discovered_at_bits", discovered_at_bits},
          {"certified", certified},
          {"certified_at_bits", certified_at_bits},
          {"certified_residual", certified_residual.to_string(6)}};
}

std::string Relation::to_string() const {
  return join_coeffs(coeffs) + " residual " + residual.to_string(3) + (certified ? " (certified at " +
         std::to_string(certified_at_bits) + " bits, normalized residual " + certified_residual.to_string(3) + ")"
                                                                          : " (uncertified)");
}

bool certify(Relation& r, const std::vector<BigReal>& high_values, Precision high) {
  const mpfr_prec_t wp = high.bits() + 16;
  std::vector<Real> v = plain(high_values);
  Real res = combine(r.coeffs, v, wp, nullptr);
  Real max_c(0, wp), max_v(0, wp);
  for (std::size_t j = 0; j < v.size(); ++j) {
    max_c = max(max_c, abs(r.coeffs[j].to_real(wp)));
    max_v = max(max_v, abs(v[j].with_prec(wp)));
  }
  Real largest = max_c * max_v;
  r.certified_at_bits = high.bits();
  if (largest.is_zero()) {
    r.certified_residual = Real(0, 64);
    r.certified = false;
    return false;
  }
  r.certified_residual = (res / largest).with_prec(64);
  double lim = -(digits_of(high) - 20);
  r.certified = r.certified_residual.is_zero() || r.certified_residual.log10_abs() < lim;
  return r.certified;
}

namespace {

// Content 1 and a positive leading coefficient.
void normalize(std::vector<Sqrt2Elem>& c) {
  Z g = 0;
  for (const auto& e : c) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.a().get_num().get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.b().get_num().get_mpz_t());
  }
  if (g == 0) return;
  int sign = 0;
  for (const auto& e : c)
    if (!e.is_zero()) {
      sign = e.sign();
      break;
    }
  Sqrt2Elem f(mpq_class(Z(sign < 0 ? -1 : 1), g));
  for (auto& e : c) e *= f;
}

// One PSLQ run plus the fold to ℤ[√2] coefficients when needed.
PslqStatus search(const std::vector<Real>& v, Field field, Precision prec, const Z& max_height,
                  std::vector<Sqrt2Elem>& coeffs) {
  if (field == Field::Sqrt2) {
    PslqStatus st = relation_over_sqrt2_raw(v, prec, max_height, coeffs).status;
    normalize(coeffs);
    return st;
  }
  PslqOutcome o = pslq(v, prec, max_height);
  coeffs.clear();
  for (const auto& c : o.coeffs) coeffs.emplace_back(mpq_class(c));
  normalize(coeffs);
  return o.status;
}

RelationSearch search_and_certify(const std::vector<BigReal>& low, const std::function<std::vector<BigReal>()>& high_src,
                                  Field field, Precision prec, Precision high, const Z& max_height) {
  RelationSearch out;
  std::vector<Sqrt2Elem> coeffs;
  out.status = search(plain(low), field, prec, max_height, coeffs);
  if (out.status != PslqStatus::Found) return out;
  Relation r;
  r.coeffs = coeffs;
  r.height = height_of(coeffs);
  r.discovered_at_bits = prec.bits();
  r.residual = combine(coeffs, plain(low), prec.bits() + 16, nullptr).with_prec(64);
  if (!certify(r, high_src(), high)) out.status = PslqStatus::Inconclusive;
  out.relation = std::move(r);
  return out;
}

}  // namespace

RelationSearch find_relation(const ValueSource& values, Field field, Precision prec, const Z& max_height) {
  Precision high = prec.scaled(1.5);
  return search_and_certify(values(prec), [&] { return values(high); }, field, prec, high, max_height);
}

RankResult numeric_rank(const ValueSource& values, Field field, Precision prec, const Z& max_height) {
  Precision high = prec.scaled(1.5);
  std::vector<BigReal> low = values(prec);
  std::vector<BigReal> hi;
  auto high_all = [&]() -> const std::vector<BigReal>& {
    if (hi.empty()) hi = values(high);
    return hi;
  };
  RankResult out;
  for (std::size_t j = 0; j < low.size(); ++j) {
    std::vector<std::size_t> idx = out.basis;
    idx.push_back(j);
    auto pick = [&idx](const std::vector<BigReal>& all) {
      std::vector<BigReal> v;
      for (auto i : idx) v.push_back(all[i]);
      return v;
    };
    RelationSearch rs;
    if (idx.size() == 1) {
      // a single value is dependent only when it vanishes
      double lim = -(digits_of(prec) - 10);
      bool zero = low[j].value().is_zero() || low[j].value().log10_abs() < lim;
      if (zero) {
        Relation r;
        r.coeffs = {Sqrt2Elem(1)};
        r.height = 1;
        r.residual = abs(low[j].value()).with_prec(64);
        r.discovered_at_bits = prec.bits();
        certify(r, pick(high_all()), high);
        rs.status = r.certified ? PslqStatus::Found : PslqStatus::Inconclusive;
        rs.relation = r;
      } else {
        rs.status = PslqStatus::NoneFound;
      }
    } else {
      rs = search_and_certify(pick(low), [&] { return pick(high_all()); }, field, prec, high, max_height);
    }
    if (rs.status == PslqStatus::Found && !rs.relation->coeffs.back().is_zero()) {
      // lift the relation to all indices
      Relation r = *rs.relation;
      std::vector<Sqrt2Elem> full(low.size());
      for (std::size_t q = 0; q < idx.size(); ++q) full[idx[q]] = r.coeffs[q];
      r.coeffs = std::move(full);
      out.relations.push_back(std::move(r));
      continue;
    }
    if (rs.status != PslqStatus::NoneFound) {
      out.verified = false;
      out.note += "value " + std::to_string(j) + ": relation search " + to_string(rs.status) + "; ";
    }
    out.basis.push_back(j);
  }
  out.rank = static_cast<long>(out.basis.size());
  return out;
}

std::optional<Expression> express_in_basis(const ValueSource& target_then_basis, Field field, Precision prec,
                                           const Z& max_height) {
  RelationSearch rs = find_relation(target_then_basis, field, prec, max_height);
  if (rs.status != PslqStatus::Found || rs.relation->coeffs.front().is_zero()) return std::nullopt;
  Expression e;
  e.relation = *rs.relation;
  const Sqrt2Elem lead = e.relation.coeffs.front();
  for (std::size_t j = 1; j < e.relation.coeffs.size(); ++j) e.coeffs.push_back(-e.relation.coeffs[j] / lead);
  return e;
}

std::optional<mpq_class> recognize_rational(const BigReal& x, const BigReal& x_high, Precision prec,
                                            const Z& max_height) {
  double lim = -(digits_of(prec) - 10);
  if (x.value().is_zero() || x.value().log10_abs() < lim) {
    if (x_high.value().is_zero() || x_high.value().log10_abs() < lim) return mpq_class(0);
    return std::nullopt;
  }
  PslqOutcome o = pslq({x.value(), Real(1, prec.bits())}, prec, max_height);
  if (o.status != PslqStatus::Found || o.coeffs[0] == 0) return std::nullopt;
  mpq_class q(-o.coeffs[1], o.coeffs[0]);
  q.canonicalize();
  const mpfr_prec_t wp = x_high.prec() + 16;
  Real diff = abs(x_high.value().with_prec(wp) - Real::from_rational(q, wp));
  Real sc = max(abs(x_high.value()), Real(1, wp));
  double hd = static_cast<double>(x_high.prec()) * std::log10(2.0);
  if (!diff.is_zero() && (diff / sc).log10_abs() > -(hd - 20)) return std::nullopt;
  return q;
}

long dimension_bound(const GroupTag& g, int k) {
  if (k < 2) throw DomainError("dimension bounds are for k ≥ 2");
  const bool even = k % 2 == 0;
  switch (g.label) {
    case Group::Gamma1_4: return even ? 2L * ((k + 2) / 4) : k / 2 - 1;
    case Group::Gamma4: return k;
    case Group::Gamma1_8: return even ? 2L * k - 1 : (3L * k) / 2;
  }
  return 0;
}

ComponentDims component_dims(const GroupTag& g, int k) {
  if (k < 2) throw DomainError("dimension bounds are for k ≥ 2");
  const bool even = k % 2 == 0;
  switch (g.label) {
    case Group::Gamma1_4: return {even ? 2 : 0, even ? 2L * ((k + 2) / 4) - 2 : k / 2 - 1};
    case Group::Gamma4: return {2, k - 2L};
    case Group::Gamma1_8: return {3, even ? 2L * k - 4 : (3L * k) / 2 - 3};
  }
  return {0, 0};
}

}  // namespace ellk
