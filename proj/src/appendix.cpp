#include "ellk/appendix.hpp"

#include "ellk/moments.hpp"
#include "ellk/numerics.hpp"
#include "ellk/qseries.hpp"
#include "ellk/quadrature.hpp"

namespace ellk {

namespace {

constexpr long kGuard = 32;

// Neville's scheme at h = 0 on the nodes (h_j, S_j).
Extrapolated extrapolate(const std::vector<long>& Ns, const std::vector<Real>& sums, mpfr_prec_t wp, mpfr_prec_t out) {
  std::size_t n = Ns.size();
  std::vector<Real> h;
  for (long N : Ns) h.push_back(Real(1, wp) / N);
  std::vector<Real> T = sums;
  Real prev_diag = T[n - 1];
  Real diag = T[n - 1];
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = n - 1; i >= m; --i) {
      T[i] = T[i] + (T[i] - T[i - 1]) * h[i] / (h[i - m] - h[i]);
      if (i == m) break;
    }
    prev_diag = diag;
    diag = T[n - 1];
  }
  Extrapolated e;
  Real v = diag.with_prec(out);
  e.value = BigReal(v, err_add(err_from(diag - prev_diag), ulp(v)));
  e.last_partial_sum = sums.back().with_prec(out);
  e.terms = Ns.back();
  return e;
}

std::vector<long> sample_points(long N_terms) {
  if (N_terms < 20) throw DomainError("extrapolated sums need at least 20 terms");
  std::vector<long> Ns;
  long step = N_terms / 20;
  for (long N = step; N <= N_terms; N += step) Ns.push_back(N);
  return Ns;
}

}  // namespace

FlCoefficient fl_coefficient(int n, Precision prec) {
  if (n < 0) throw DomainError("fl_coefficient needs n ≥ 0");
  const mpfr_prec_t wp = prec.bits() + kGuard;
  auto f = [&](const Abscissa& at, std::vector<Real>& out) {
    Real K = ellip_K_from_complement(at.to_b, wp);
    Real Kc = ellip_K_from_complement(at.x, wp);
    Real y = at.from_a - at.to_b;  // 2x − 1
    out[0] = K * Kc * legendre_P(n, BigReal(y, err_zero())).value();
  };
  QuadratureOptions opt;
  opt.max_singularity = 0.25;
  auto res = tanh_sinh_integrate(f, 1, Real(0, wp), Real(1, wp), prec, opt);
  if (!res[0].converged) throw DomainError("fl_coefficient: quadrature did not converge");
  FlCoefficient out{n, res[0].value, BigReal(Real(0, prec.bits()), err_zero()), Real()};
  if (n % 2 == 0) {
    Precision p2 = Precision::from_bits(wp);
    BigReal r = gamma(mpq_class(n + 1, 2), p2) / gamma(mpq_class(n + 2, 2), p2);
    BigReal r4 = r * r * r * r;
    Real pi8 = Real::pi(wp);
    pi8.mul_2exp(-3);
    BigReal v = BigReal(pi8) * r4;
    out.closed_form = BigReal(v.value().with_prec(prec.bits()), err_add(v.err(), ulp(v.value().with_prec(prec.bits()))));
  }
  out.diff = abs(out.quadrature.value() - out.closed_form.value());
  return out;
}

ParsevalCheck parseval_check(long N_terms, Precision prec) {
  if (N_terms < 1) throw DomainError("parseval_check needs N ≥ 1");
  const mpfr_prec_t wp = prec.bits() + kGuard + 16;
  Real pi = Real::pi(wp);
  Real pi8 = pi;
  pi8.mul_2exp(-3);
  // Γ(1/2+n)/Γ(1+n) by the ratio recurrence
  Real r = sqrt(pi);
  Real sum(0, wp);
  std::vector<long> Ns;
  if (N_terms >= 20) Ns = sample_points(N_terms);
  std::vector<Real> sums;
  std::size_t next = 0;
  for (long n = 0; n < N_terms; ++n) {
    if (n > 0) r = r * (2 * n - 1) / (2 * n);
    Real r2 = r * r;
    Real c = pi8 * r2 * r2;
    sum += c * c * (4 * n + 1);
    if (next < Ns.size() && n + 1 == Ns[next]) {
      sums.push_back(sum);
      ++next;
    }
  }
  ParsevalCheck out;
  if (Ns.empty()) {
    out.series.value = BigReal(sum.with_prec(prec.bits()));
    out.series.last_partial_sum = sum.with_prec(prec.bits());
    out.series.terms = N_terms;
  } else {
    out.series = extrapolate(Ns, sums, wp, prec.bits());
  }
  out.quadrature = integrate_moments(GroupTag::of(Group::Gamma1_4), 6, {{3, XPoly::monomial(0)}}, prec).front().value;
  out.diff = abs(out.series.value.value() - out.quadrature.value());
  return out;
}

Extrapolated hypergeometric_lvalue(long N_terms, Precision prec) {
  const mpfr_prec_t wp = prec.bits() + kGuard + 16;
  std::vector<mpq_class> num(8, mpq_class(1, 2));
  num.push_back(mpq_class(5, 4));
  std::vector<mpq_class> den(7, mpq_class(1));
  den.push_back(mpq_class(1, 4));
  BigReal one(Real(1, wp), err_zero());
  std::vector<long> Ns = sample_points(N_terms);
  std::vector<Real> sums;
  Real scale = pow(Real::pi(wp), 6) / 1024;
  for (long N : Ns) sums.push_back(pfq_partial_sum(num, den, one, N, Precision::from_bits(wp)).value() * scale);
  return extrapolate(Ns, sums, wp, prec.bits());
}

mpz_class eta2_12_coefficient(long n) {
  if (n < 0) throw DomainError("coefficient index must be ≥ 0");
  QSeries s = eta_product({{2, 12}}, grid_index(n + 1));
  return s[grid_index(n)].a().get_num();
}

SupercongruenceResult supercongruence_check(long p) {
  if (p < 7) throw DomainError("the congruence is stated for primes p ≥ 7");
  if (!mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30)) throw DomainError(std::to_string(p) + " is not prime");
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), 6);
  // (1/2)_n/n! = C(2n,n)/4^n; the p-adic valuation of every term is tracked exactly
  mpq_class sum = 0;
  mpq_class ratio = 1;
  for (long n = 0; n < p; ++n) {
    if (n > 0) {
      ratio *= mpq_class(2 * n - 1, 2 * n);
      ratio.canonicalize();
    }
    mpq_class r2 = ratio * ratio;
    mpq_class r8 = r2 * r2;
    r8 *= r8;
    sum += r8 * (4 * n + 1);
  }
  sum.canonicalize();
  if (mpz_divisible_ui_p(sum.get_den().get_mpz_t(), static_cast<unsigned long>(p)))
    throw DomainError("p divides the denominator of the truncated sum");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), sum.get_den().get_mpz_t(), mod.get_mpz_t());
  mpz_class lhs = sum.get_num() * inv;
  mpz_mod(lhs.get_mpz_t(), lhs.get_mpz_t(), mod.get_mpz_t());
  mpz_class ap = eta2_12_coefficient(p);
  mpz_class rhs = ap * p;
  mpz_mod(rhs.get_mpz_t(), rhs.get_mpz_t(), mod.get_mpz_t());
  SupercongruenceResult out{p, {p, lhs}, {p, rhs}, lhs == rhs, false, ap};
  mpz_class lp = lhs % p, rp = rhs % p;
  out.holds_mod_p = lp == rp;
  return out;
}

}  // namespace ellk
