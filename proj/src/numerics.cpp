#include "ellk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace ellk {

namespace {

constexpr long kGuard = 24;

// B_{2k} for k = 1..n from the tangent numbers (Brent–Harvey), integer arithmetic only.
std::vector<mpq_class> even_bernoulli_table(unsigned n) {
  std::vector<mpz_class> t(n + 1);
  if (n >= 1) t[1] = 1;
  for (unsigned k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (unsigned k = 2; k <= n; ++k)
    for (unsigned j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  std::vector<mpq_class> b(n + 1);
  for (unsigned k = 1; k <= n; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
    mpq_class v(2 * k * t[k], four_k * (four_k - 1));
    v.canonicalize();
    b[k] = (k % 2 == 1) ? v : mpq_class(-v);
  }
  return b;
}

std::mutex g_bernoulli_mutex;
std::vector<mpq_class> g_even_bernoulli;

mpq_class even_bernoulli(unsigned k) {
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  if (k >= g_even_bernoulli.size()) {
    unsigned target = std::max<unsigned>(k, 2 * static_cast<unsigned>(g_even_bernoulli.size()));
    target = std::max(target, 64u);
    g_even_bernoulli = even_bernoulli_table(target);
  }
  return g_even_bernoulli[k];
}

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

}  // namespace

mpq_class bernoulli(unsigned n) {
  if (n == 0) return 1;
  if (n == 1) return mpq_class(-1, 2);
  if (n % 2 == 1) return 0;
  return even_bernoulli(n / 2);
}

mpq_class bernoulli_poly(unsigned n, const mpq_class& x) {
  mpq_class sum = 0;
  mpq_class xp = 1;
  // accumulate from the highest Bernoulli index down so x^{n−j} grows with the loop
  for (unsigned j = n + 1; j-- > 0;) {
    sum += mpq_class(binomial(n, j)) * bernoulli(j) * xp;
    xp *= x;
  }
  return sum;
}

int kronecker(int D, long n) {
  auto residue = [n](long m) { return ((n % m) + m) % m; };
  switch (D) {
    case 1:
      return 1;
    case -4: {
      long r = residue(4);
      return r == 1 ? 1 : (r == 3 ? -1 : 0);
    }
    case 8: {
      long r = residue(8);
      if (r % 2 == 0) return 0;
      return (r == 1 || r == 7) ? 1 : -1;
    }
    case -8: {
      long r = residue(8);
      if (r % 2 == 0) return 0;
      return (r == 1 || r == 3) ? 1 : -1;
    }
    default:
      throw DomainError("unsupported discriminant " + std::to_string(D));
  }
}

Real agm_raw(const Real& a0, const Real& b0, mpfr_prec_t prec) {
  Real a = a0.with_prec(prec);
  Real b = b0.with_prec(prec);
  Real tol = two_pow(-static_cast<long>(prec) + 2, prec);
  for (int iter = 0; iter < 10000; ++iter) {
    Real d = abs(a - b);
    if (d <= tol * a) break;
    Real an = (a + b);
    an.mul_2exp(-1);
    Real bn = sqrt(a * b);
    a = std::move(an);
    b = std::move(bn);
  }
  Real m = a + b;
  m.mul_2exp(-1);
  return m;
}

BigReal agm(const BigReal& a, const BigReal& b, Precision prec) {
  if (a.value().sign() <= 0 || b.value().sign() <= 0) throw DomainError("agm requires positive arguments");
  Real v = agm_raw(a.value(), b.value(), prec.bits() + kGuard).with_prec(prec.bits());
  // the mean is 1-Lipschitz in each argument for positive inputs
  Real e = err_add(err_add(a.err(), b.err()), err_mul(ulp(v), Real(2, BigReal::kRadiusPrec)));
  return BigReal(std::move(v), std::move(e));
}

Real ellip_K_from_complement(const Real& mc, mpfr_prec_t prec) {
  Real one(1, prec);
  Real g = agm_raw(one, sqrt(mc.with_prec(prec)), prec);
  Real k = Real::pi(prec) / g;
  k.mul_2exp(-1);
  return k;
}

BigReal ellip_K(const BigReal& m, Precision prec) {
  if (m.value().sign() < 0 || m.value() >= 1) throw DomainError("ellip_K requires 0 <= m < 1");
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real mc = 1 - m.value().with_prec(wp);
  Real k = ellip_K_from_complement(mc, wp);
  Real v = k.with_prec(prec.bits());
  Real e = err_mul(ulp(v), Real(2, BigReal::kRadiusPrec));
  if (!m.err().is_zero()) {
    // |dK/dm| ≤ K/(1−m) + 1
    Real slope = err_add(err_from(k / mc), Real(1, BigReal::kRadiusPrec));
    e = err_add(e, err_mul(slope, m.err()));
  }
  return BigReal(std::move(v), std::move(e));
}

BigReal gamma(const BigReal& x, Precision prec) {
  const Real& xv = x.value();
  if (xv.sign() <= 0 && mpfr_integer_p(xv.raw())) throw DomainError("gamma pole at non-positive integer");
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real xw = xv.with_prec(wp);
  Real g(wp);
  mpfr_gamma(g.raw(), xw.raw(), MPFR_RNDN);
  Real v = g.with_prec(prec.bits());
  Real e = err_mul(ulp(v), Real(4, BigReal::kRadiusPrec));
  if (!x.err().is_zero()) {
    Real psi(wp);
    mpfr_digamma(psi.raw(), xw.raw(), MPFR_RNDN);
    e = err_add(e, err_mul(err_from(g * psi), x.err()));
  }
  return BigReal(std::move(v), std::move(e));
}

BigReal gamma(const mpq_class& x, Precision prec) {
  mpfr_prec_t wp = prec.bits() + kGuard;
  BigReal xb(Real::from_rational(x, wp), err_zero());
  return gamma(xb, prec);
}

BigReal hurwitz_zeta(long s, const mpq_class& a, Precision prec) {
  if (s < 2) throw DomainError("hurwitz_zeta requires s >= 2");
  if (a <= 0) throw DomainError("hurwitz_zeta requires a > 0");
  mpfr_prec_t wp = prec.bits() + kGuard + 8;
  long N = std::max<long>(10, wp / 3);
  Real ar = Real::from_rational(a, wp);
  Real sum(wp);
  for (long n = N - 1; n >= 0; --n) sum += pow(ar + n, -s);
  Real x = ar + N;
  Real xs = pow(x, -s);
  Real head = xs * x / (s - 1);
  Real half = xs;
  half.mul_2exp(-1);
  sum += head;
  sum += half;
  // Euler–Maclaurin correction terms
  Real eps = two_pow(-static_cast<long>(wp), 64);
  Real rising(s, wp);          // (s)_{2j−1}
  Real xpow = xs / x;          // x^{−s−2j+1}
  Real x2 = x * x;
  Real last(wp);
  Real prev_mag(wp);
  bool shrinking = false;
  for (unsigned j = 1; j < 100000; ++j) {
    mpq_class c = bernoulli(2 * j) / mpq_class(factorial(2 * j));
    Real term = Real::from_rational(c, wp) * rising * xpow;
    Real mag = abs(term);
    if (j > 1 && mag > prev_mag && shrinking) throw DomainError("hurwitz_zeta: asymptotic tail diverged");
    if (j > 1 && mag < prev_mag) shrinking = true;
    sum += term;
    last = mag;
    if (mag <= eps * abs(sum)) break;
    prev_mag = mag;
    rising *= (s + 2 * static_cast<long>(j) - 1);
    rising *= (s + 2 * static_cast<long>(j));
    xpow /= x2;
  }
  Real v = sum.with_prec(prec.bits());
  Real e = err_add(err_mul(last, Real(2, BigReal::kRadiusPrec)), ulp(v));
  e = err_add(e, err_mul(ulp(sum), Real(N + 64, BigReal::kRadiusPrec)));
  return BigReal(std::move(v), std::move(e));
}

BigReal zeta(long s, Precision prec) {
  if (s < 2) throw DomainError("zeta supported for s >= 2 only");
  return hurwitz_zeta(s, 1, prec);
}

BigReal dirichlet_L(int D, long s, Precision prec) {
  if (D != 1 && D != -4 && D != 8 && D != -8) throw DomainError("unsupported discriminant");
  if (s < 1) throw DomainError("dirichlet_L requires s >= 1");
  if (D == 1) {
    if (s == 1) throw DomainError("pole of zeta at s = 1");
    return zeta(s, prec);
  }
  long q = std::abs(D);
  Precision wp = prec.plus_bits(kGuard);
  if (s == 1) {
    // L(χ,1) = −(1/q) Σ χ(a) ψ(a/q)
    Real sum(wp.bits());
    for (long a = 1; a < q; ++a) {
      int c = kronecker(D, a);
      if (c == 0) continue;
      Real x = Real::from_rational(mpq_class(a, q), wp.bits());
      Real psi(wp.bits());
      mpfr_digamma(psi.raw(), x.raw(), MPFR_RNDN);
      if (c > 0) sum -= psi; else sum += psi;
    }
    sum /= q;
    Real v = sum.with_prec(prec.bits());
    return BigReal(v, err_mul(ulp(v), Real(4, BigReal::kRadiusPrec)));
  }
  BigReal total(Real(wp.bits()), err_zero());
  for (long a = 1; a < q; ++a) {
    int c = kronecker(D, a);
    if (c == 0) continue;
    BigReal h = hurwitz_zeta(s, mpq_class(a, q), wp);
    total = c > 0 ? total + h : total - h;
  }
  Real scale = pow(Real(q, wp.bits()), -s);
  BigReal r = total * BigReal(scale, ulp(scale));
  Real v = r.value().with_prec(prec.bits());
  return BigReal(v, err_add(r.err(), ulp(v)));
}

BigReal legendre_P(int n, const BigReal& x) {
  if (n < 0) throw DomainError("legendre_P requires n >= 0");
  mpfr_prec_t wp = x.prec() + kGuard;
  Real xv = x.value().with_prec(wp);
  Real p0(1, wp);
  if (n == 0) return BigReal(Real(1, x.prec()), err_zero());
  Real p1 = xv;
  for (int k = 1; k < n; ++k) {
    Real p2 = (xv * p1 * (2 * k + 1) - p0 * k) / (k + 1);
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  Real v = p1.with_prec(x.prec());
  // |P_n'| ≤ n² on [−1,1]; larger |x| scales like n²|x|^{n−1}
  Real slope(static_cast<long>(n) * n, BigReal::kRadiusPrec);
  Real ax = err_from(xv);
  if (ax > 1) slope = err_mul(slope, pow(ax, n - 1));
  Real e = err_add(err_mul(slope, x.err()), err_mul(ulp(v), Real(2 * n + 2, BigReal::kRadiusPrec)));
  return BigReal(std::move(v), std::move(e));
}

BigReal pfq_partial_sum(const std::vector<mpq_class>& numerators,
                        const std::vector<mpq_class>& denominators, const BigReal& z, long N,
                        Precision prec) {
  if (N < 1) throw DomainError("pfq_partial_sum requires N >= 1");
  for (const auto& b : denominators) {
    if (b <= 0 && b.get_den() == 1 && -b <= N - 2) throw DomainError("denominator parameter reaches a pole");
  }
  mpfr_prec_t wp = prec.bits() + kGuard + static_cast<long>(std::log2(static_cast<double>(N) + 1)) + 4;
  Real zr = z.value().with_prec(wp);
  Real term(1, wp);
  Real sum(1, wp);
  Real weighted(wp);  // Σ n·|t_n|, for the sensitivity to z
  for (long n = 0; n + 1 < N; ++n) {
    mpq_class ratio = 1;
    for (const auto& a : numerators) ratio *= a + n;
    for (const auto& b : denominators) ratio /= b + n;
    ratio /= n + 1;
    term *= Real::from_rational(ratio, wp);
    term *= zr;
    sum += term;
    weighted += abs(term) * (n + 1);
    if (term.is_zero()) break;
  }
  Real v = sum.with_prec(prec.bits());
  Real e = err_add(ulp(v), err_mul(ulp(sum), Real(4 * N + 8, BigReal::kRadiusPrec)));
  if (!z.err().is_zero() && !zr.is_zero()) e = err_add(e, err_mul(err_from(weighted / zr), z.err()));
  return BigReal(std::move(v), std::move(e));
}

}  // namespace ellk
