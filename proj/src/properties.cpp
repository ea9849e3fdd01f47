#include "ellk/properties.hpp"

#include "ellk/lvalue.hpp"
#include "ellk/modular.hpp"
#include "ellk/numerics.hpp"
#include "ellk/qseries.hpp"
#include "ellk/relations.hpp"

#include <chrono>
#include <functional>
#include <random>

namespace ellk {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

CheckRow bool_row(const std::string& item, bool ok, const std::string& lhs, const std::string& rhs, long bits,
                  double ms) {
  CheckRow r;
  r.item = item;
  r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_diff = ok ? "0" : "mismatch";
  r.prec_bits = bits;
  r.runtime_ms = ms;
  return r;
}

}  // namespace

CheckRow planted_pslq_recovery(int trials, long digits, unsigned long seed) {
  auto t0 = std::chrono::steady_clock::now();
  Precision prec = Precision::from_digits(digits);
  const mpfr_prec_t wp = prec.bits() + 32;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-1000000, 1000000);
  gmp_randstate_t bits;
  gmp_randinit_default(bits);
  gmp_randseed_ui(bits, seed);
  int ok = 0;
  std::string first_failure;
  for (int t = 0; t < trials; ++t) {
    std::size_t n = 3 + static_cast<std::size_t>(t % 4);
    std::vector<mpz_class> c(n);
    for (auto& x : c) x = coef(rng);
    while (c.back() == 0) c.back() = coef(rng);
    std::vector<Real> v(n, Real(wp));
    Real acc(0, wp);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      mpfr_urandomb(v[j].raw(), bits);
      v[j] += 1;
      Real cj = Real::from_integer(c[j], wp);
      acc += cj * v[j];
    }
    v.back() = -acc / Real::from_integer(c.back(), wp);
    PslqOutcome o = pslq(v, prec, mpz_class(1000000));
    bool hit = false;
    if (o.status == PslqStatus::Found) {
      mpz_class g = 0;
      for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      for (int sgn : {1, -1}) {
        bool same = true;
        for (std::size_t j = 0; j < n; ++j) same = same && o.coeffs[j] * g == sgn * c[j];
        hit = hit || same;
      }
    }
    if (hit) ++ok;
    else if (first_failure.empty()) first_failure = "trial " + std::to_string(t) + ": " + to_string(o.status);
  }
  gmp_randclear(bits);
  CheckRow r = bool_row("pslq planted relations", ok == trials, std::to_string(ok) + "/" + std::to_string(trials),
                        std::to_string(trials) + "/" + std::to_string(trials), prec.bits(), ms_since(t0));
  r.note = first_failure;
  return r;
}

std::vector<CheckRow> precision_doubling_rows(long digits) {
  Precision lo = Precision::from_digits(digits), hi = Precision::from_digits(2 * digits);
  auto rd = [](const char* text, Precision p) { return BigReal(Real::from_string(text, p.bits() + 16), err_zero()); };
  std::vector<std::pair<std::string, std::function<BigReal(Precision)>>> fns = {
      {"agm(1, 0.3)", [&](Precision p) { return agm(rd("1", p), rd("0.3", p), p); }},
      {"K(0.3)", [&](Precision p) { return ellip_K(rd("0.3", p), p); }},
      {"K(1 - 1e-30)", [&](Precision p) {
         Real mc = Real::from_string("1e-30", p.bits() + 16);
         return BigReal(ellip_K_from_complement(mc, p.bits()));
       }},
      {"gamma(1/3)", [&](Precision p) { return gamma(mpq_class(1, 3), p); }},
      {"gamma(2.75)", [&](Precision p) { return gamma(rd("2.75", p), p); }},
      {"zeta(3)", [&](Precision p) { return zeta(3, p); }},
      {"zeta(8)", [&](Precision p) { return zeta(8, p); }},
      {"hurwitz_zeta(3, 1/4)", [&](Precision p) { return hurwitz_zeta(3, mpq_class(1, 4), p); }},
      {"L_-4(1)", [&](Precision p) { return dirichlet_L(-4, 1, p); }},
      {"L_-4(2)", [&](Precision p) { return dirichlet_L(-4, 2, p); }},
      {"L_8(3)", [&](Precision p) { return dirichlet_L(8, 3, p); }},
      {"L_-8(4)", [&](Precision p) { return dirichlet_L(-8, 4, p); }},
      {"P_7(0.3)", [&](Precision p) { return legendre_P(7, rd("0.3", p)); }},
      {"3F2 partial sum", [&](Precision p) {
         return pfq_partial_sum({mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2)}, {1, 1}, rd("0.25", p), 200, p);
       }},
      {"theta_2(0.7i)", [&](Precision p) { return theta_value(2, Real::from_string("0.7", p.bits() + 16), p); }},
      {"theta_3(0.2i)", [&](Precision p) { return theta_value(3, Real::from_string("0.2", p.bits() + 16), p); }},
      {"theta_4(1.5i)", [&](Precision p) { return theta_value(4, Real::from_string("1.5", p.bits() + 16), p); }},
      {"eta(0.6i)", [&](Precision p) { return eta_value(Real::from_string("0.6", p.bits() + 16), p); }},
      {"m(1.3)", [&](Precision p) { return m_of_t(Real::from_string("1.3", p.bits() + 16), p); }},
      {"t(0.2)", [&](Precision p) { return t_of_m(Real::from_string("0.2", p.bits() + 16), p); }},
      {"Omega_-4", [&](Precision p) { return omega(-4, p); }},
      {"Omega_-8", [&](Precision p) { return omega(-8, p); }},
  };
  std::vector<CheckRow> rows;
  for (const auto& [name, f] : fns) {
    auto t0 = std::chrono::steady_clock::now();
    BigReal a = f(lo), b = f(hi);
    Real diff = abs(a.value().with_prec(hi.bits()) - b.value());
    Real scale = max(abs(b.value()), Real(1, hi.bits()));
    bool ok = a.agrees_with(b) && (diff.is_zero() || (diff / scale).log10_abs() < -(static_cast<double>(digits) - 5));
    CheckRow r = bool_row("doubling " + name, ok, a.to_string(20), b.to_string(20), lo.bits(), ms_since(t0));
    r.abs_diff = diff.to_string(3);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CheckRow> modular_invariant_rows(long order) {
  std::vector<CheckRow> rows;
  const long N = grid_index(order);
  auto t0 = std::chrono::steady_clock::now();
  QSeries t2 = theta_series(2, 1, N), t3 = theta_series(3, 1, N), t4 = theta_series(4, 1, N);
  rows.push_back(bool_row("theta3^4 = theta2^4 + theta4^4", t3.pow(4).agrees_with(t2.pow(4) + t4.pow(4)),
                          t3.pow(4).to_string(4), (t2.pow(4) + t4.pow(4)).to_string(4), 0, ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  QSeries prod = (t2 * t3 * t4).pow(4);
  QSeries eta = eta_product({{1, 12}}, N) * Sqrt2Elem(16);
  rows.push_back(bool_row("(theta2 theta3 theta4)^4 = 16 eta^12", prod.agrees_with(eta), prod.to_string(4),
                          eta.to_string(4), 0, ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  QSeries lhs = t3 * t3;
  QSeries rhs = theta_series(3, 2, N).pow(2) + theta_series(2, 2, N).pow(2);
  rows.push_back(bool_row("theta3(t)^2 = theta3(2t)^2 + theta2(2t)^2", lhs.agrees_with(rhs), lhs.to_string(4),
                          rhs.to_string(4), 0, ms_since(t0)));

  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  for (const auto& g : GroupTag::all()) {
    for (int k = 3; k <= 6; ++k) {
      t0 = std::chrono::steady_clock::now();
      long dim = space_dimension(g, k);
      std::vector<Sqrt2Elem> c;
      for (long i = 0; i < dim; ++i) {
        mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
        a.canonicalize();
        b.canonicalize();
        c.emplace_back(a, g.over_sqrt2() ? b : mpq_class(0));
      }
      XPoly p(c);
      FormHandle viaTheta = FormHandle::from_theta(g, ThetaPolynomial::from_xpoly(g, p, k), k);
      XPoly back = p_map(viaTheta);
      bool ok = back == p;
      QSeries direct = viaTheta.expansion(N);
      QSeries combined(N);
      auto basis = monomial_basis(g, k);
      for (long i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) combined += basis[i].expansion(N) * p.coeff(i);
      ok = ok && direct.agrees_with(combined);
      rows.push_back(bool_row("P-map round trip " + g.name() + " k=" + std::to_string(k), ok, back.to_string(),
                              p.to_string(), 0, ms_since(t0)));
    }
  }
  return rows;
}

std::vector<CheckRow> dimension_table_rows(int kmax) {
  std::vector<CheckRow> rows;
  for (const auto& g : GroupTag::all()) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string bad;
    for (int k = 3; k <= kmax; ++k) {
      ComponentDims d = component_dims(g, k);
      long b = dimension_bound(g, k);
      if (d.eisenstein_constants + d.cusp_bound != b || d.cusp_bound < 0) {
        ok = false;
        bad += " k=" + std::to_string(k);
      }
    }
    CheckRow r = bool_row("component dims sum to bound " + g.name() + " k=3.." + std::to_string(kmax), ok,
                          ok ? "consistent" : "inconsistent at" + bad, "consistent", 0, ms_since(t0));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ellk
