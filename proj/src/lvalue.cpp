#include "ellk/lvalue.hpp"

#include "ellk/moments.hpp"
#include "ellk/quadrature.hpp"
#include "ellk/relations.hpp"

#include <cmath>

namespace ellk {

namespace {

constexpr long kGuard = 32;

double coeff_log2(const Sqrt2Elem& c) {
  double a = std::fabs(c.a().get_d()), b = std::fabs(c.b().get_d());
  double m = a + b * M_SQRT2;
  return m > 0 ? std::log2(m) : -1e300;
}

// Σ c_j e^{−2π(idx_j/8)T}
struct NumericSeries {
  std::vector<long> idx;
  std::vector<Real> coeff;
  std::vector<double> tail_log2;  // max log2|c| over the remaining terms

  NumericSeries() = default;
  NumericSeries(const QSeries& s, mpfr_prec_t wp) {
    for (long i : s.support()) {
      idx.push_back(i);
      coeff.push_back(s[i].to_real(wp));
    }
    tail_log2.assign(idx.size(), -1e300);
    for (std::size_t j = idx.size(); j-- > 0;) {
      double here = coeff_log2(s[idx[j]]);
      tail_log2[j] = j + 1 < idx.size() ? std::max(here, tail_log2[j + 1]) : here;
    }
  }

  Real eval(const Real& T, mpfr_prec_t wp) const {
    Real acc(0, wp);
    if (idx.empty()) return acc;
    Real base = exp(T * Real::pi(wp) * -2 / 8);
    double decay = 2 * M_PI * T.to_double() / 8 / M_LN2;  // −log2 of base
    Real pw(1, wp);
    long at = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j > 0 && !acc.is_zero()) {
        double bound = -decay * static_cast<double>(idx[j]) + tail_log2[j] + std::log2(static_cast<double>(idx.size() - j));
        if (bound < acc.log10_abs() / std::log10(2.0) - static_cast<double>(wp) - 8) break;
      }
      long gap = idx[j] - at;
      if (gap == 1) {
        pw *= base;
      } else if (gap > 1) {
        Real step(wp);
        mpfr_pow_ui(step.raw(), base.raw(), static_cast<unsigned long>(gap), MPFR_RNDN);
        pw *= step;
      }
      at = idx[j];
      acc += coeff[j] * pw;
    }
    return acc;
  }
};

// log2 of the first omitted term at t = 1, using the largest coefficient of the upper half.
double tail_size(const QSeries& s) {
  double worst = -1e300;
  for (long i : s.support())
    if (i >= s.order() / 2) worst = std::max(worst, coeff_log2(s[i]));
  return worst - 2 * M_PI * static_cast<double>(s.order()) / 8 / M_LN2;
}

Real eta_direct(const Real& y, mpfr_prec_t wp) {
  Real pi = Real::pi(wp);
  Real q = exp(-(pi * y * 2));
  Real sum(1, wp);
  double decay = 2 * M_PI * y.to_double() / M_LN2;
  for (long n = 1;; ++n) {
    long e1 = n * (3 * n - 1) / 2, e2 = n * (3 * n + 1) / 2;
    if (decay * static_cast<double>(e1) > static_cast<double>(wp) + 8) break;
    Real t1(wp), t2(wp);
    mpfr_pow_ui(t1.raw(), q.raw(), static_cast<unsigned long>(e1), MPFR_RNDN);
    mpfr_pow_ui(t2.raw(), q.raw(), static_cast<unsigned long>(e2), MPFR_RNDN);
    if (n % 2 == 1) sum -= t1 + t2; else sum += t1 + t2;
  }
  return exp(-(pi * y) / 12) * sum;
}

Real eta_raw(const Real& y, mpfr_prec_t wp) {
  if (y >= 1) return eta_direct(y, wp);
  Real inv = Real(1, wp) / y;
  return eta_direct(inv, wp) / sqrt(y);
}

Real theta_direct(int j, const Real& y, mpfr_prec_t wp) {
  Real pi = Real::pi(wp);
  double decay = M_PI * y.to_double() / M_LN2;
  if (j == 2) {
    Real sum(0, wp);
    for (long n = 0;; ++n) {
      double e = (n + 0.5) * (n + 0.5);
      if (n > 0 && decay * e > static_cast<double>(wp) + 8) break;
      Real h(2 * n + 1, wp);
      h = h * h / 4;
      sum += exp(-(pi * y * h));
    }
    return sum * 2;
  }
  Real sum(0, wp);
  for (long n = 1;; ++n) {
    if (decay * static_cast<double>(n * n) > static_cast<double>(wp) + 8) break;
    Real term = exp(-(pi * y * (n * n)));
    if (j == 4 && n % 2 == 1) sum -= term; else sum += term;
  }
  return sum * 2 + 1;
}

Real theta_raw(int j, const Real& y, mpfr_prec_t wp) {
  if (y >= 1) return theta_direct(j, y, wp);
  Real inv = Real(1, wp) / y;
  int swapped = j == 2 ? 4 : (j == 4 ? 2 : 3);
  return theta_direct(swapped, inv, wp) / sqrt(y);
}

BigReal with_rounding(Real v, long bits_lost = 8) {
  Real e = ulp(v);
  e.mul_2exp(bits_lost);
  return BigReal(std::move(v), err_from(e));
}

}  // namespace

BigReal theta_value(int j, const Real& y, Precision prec) {
  if (!(y > 0)) throw DomainError("theta_value needs y > 0");
  if (j < 2 || j > 4) throw DomainError("theta index must be 2, 3 or 4");
  mpfr_prec_t wp = prec.bits() + kGuard;
  return with_rounding(theta_raw(j, y.with_prec(wp), wp).with_prec(prec.bits()));
}

BigReal eta_value(const Real& y, Precision prec) {
  if (!(y > 0)) throw DomainError("eta_value needs y > 0");
  mpfr_prec_t wp = prec.bits() + kGuard;
  return with_rounding(eta_raw(y.with_prec(wp), wp).with_prec(prec.bits()));
}

BigReal m_of_t(const Real& t, Precision prec) {
  if (!(t > 0)) throw DomainError("m_of_t needs t > 0");
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real tw = t.with_prec(wp);
  Real r = theta_raw(2, tw, wp) / theta_raw(3, tw, wp);
  return with_rounding(pow(r, 4).with_prec(prec.bits()));
}

BigReal t_of_m(const Real& m, Precision prec) {
  if (!(m > 0) || !(m < 1)) throw DomainError("t_of_m needs 0 < m < 1");
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real mw = m.with_prec(wp);
  Real mc = Real(1, wp) - mw;
  return with_rounding((ellip_K_from_complement(mw, wp) / ellip_K_from_complement(mc, wp)).with_prec(prec.bits()));
}

// ---------------------------------------------------------------- evaluator

struct FormEvaluator::Impl {
  mpfr_prec_t wp = 0;
  int k = 0;
  bool is_eta = false;
  std::vector<std::pair<long, long>> eta_factors;
  NumericSeries infinity;
  NumericSeries zero;
  Real zero_prefactor;
  int zero_t_power = 0;
};

FormEvaluator::FormEvaluator(const FormHandle& f, Precision prec) : impl_(std::make_unique<Impl>()) {
  impl_->wp = prec.bits() + kGuard;
  impl_->k = f.weight();
  if (const auto* e = std::get_if<EtaDescriptor>(&f.representation())) {
    impl_->is_eta = true;
    impl_->eta_factors = e->factors;
    return;
  }
  double need = -static_cast<double>(impl_->wp) - 24;
  long order = 8 * static_cast<long>(std::ceil((impl_->wp + 40) * M_LN2 / (2 * M_PI))) + 64;
  for (int attempt = 0;; ++attempt) {
    CuspExpansions c = cusp_expansions(f, order);
    if ((tail_size(c.infinity) < need && tail_size(c.zero) < need) || attempt == 6) {
      impl_->infinity = NumericSeries(c.infinity, impl_->wp);
      impl_->zero = NumericSeries(c.zero, impl_->wp);
      impl_->zero_prefactor = c.zero_prefactor.to_real(impl_->wp);
      impl_->zero_t_power = c.zero_t_power;
      if (attempt == 6) throw DomainError("q-expansion coefficients grow too fast for the requested precision");
      break;
    }
    order = order * 3 / 2;
  }
}

FormEvaluator::~FormEvaluator() = default;
FormEvaluator::FormEvaluator(FormEvaluator&&) noexcept = default;
FormEvaluator& FormEvaluator::operator=(FormEvaluator&&) noexcept = default;

mpfr_prec_t FormEvaluator::working_bits() const { return impl_->wp; }

Real FormEvaluator::operator()(const Real& t_in) const {
  const mpfr_prec_t wp = impl_->wp;
  Real t = t_in.with_prec(wp);
  if (!(t > 0)) throw DomainError("forms are evaluated at t > 0");
  if (impl_->is_eta) {
    Real v(1, wp);
    for (auto [m, e] : impl_->eta_factors) {
      Real y = t * m;
      y.mul_2exp(-1);
      v *= pow(eta_raw(y, wp), e);
    }
    return v;
  }
  if (t >= 1) return impl_->infinity.eval(t, wp);
  Real inv = Real(1, wp) / t;
  return impl_->zero_prefactor * pow(t, impl_->zero_t_power) * impl_->zero.eval(inv, wp);
}

BigReal eval_form(const FormHandle& f, const Real& t, Precision prec) {
  FormEvaluator ev(f, prec);
  return with_rounding(ev(t).with_prec(prec.bits()), 12);
}

// ---------------------------------------------------------------- L-values

namespace {

void check_cusp_vanishing(const FormHandle& f) {
  if (const auto* e = std::get_if<EtaDescriptor>(&f.representation())) {
    mpq_class at_inf = 0, at_zero = 0;
    for (auto [m, x] : e->factors) {
      at_inf += mpq_class(m * x);
      at_zero += mpq_class(x, m);
    }
    if (at_inf <= 0 || at_zero <= 0)
      throw DomainError("eta product does not vanish at both cusps 0 and ∞; its Mellin integral diverges");
    return;
  }
  CuspExpansions c = cusp_expansions(f, 8);
  if (!c.infinity[0].is_zero() || !c.zero[0].is_zero())
    throw DomainError("form does not vanish at both cusps 0 and ∞; its Mellin integral diverges");
}

}  // namespace

std::vector<BigReal> lvalue_via_qexp(const FormHandle& f, const std::vector<int>& s_values, Precision prec) {
  for (int s : s_values)
    if (s < 1 || s > f.weight() - 1) throw DomainError("s must be an integer in [1, k−1]");
  check_cusp_vanishing(f);
  FormEvaluator ev(f, prec.plus_bits(16));
  const mpfr_prec_t wp = ev.working_bits();
  auto integrand = [&](const Real& u, std::vector<Real>& out) {
    Real t = exp(u.with_prec(wp));
    Real v = ev(t);
    for (std::size_t i = 0; i < s_values.size(); ++i) out[i] = v * pow(t, s_values[i]);
  };
  auto results = trapezoid_real_line(integrand, s_values.size(), prec.plus_bits(16), 14);
  std::vector<BigReal> out;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!results[i].converged) throw DomainError("Mellin quadrature did not converge");
    int s = s_values[i];
    BigReal pref = BigReal(pow(Real::pi(wp), s)) / gamma(mpq_class(s), Precision::from_bits(wp));
    BigReal v = results[i].value * pref;
    out.push_back(BigReal(v.value().with_prec(prec.bits()), err_add(v.err(), ulp(v.value().with_prec(prec.bits())))));
  }
  return out;
}

BigReal lvalue_via_qexp(const FormHandle& f, int s, Precision prec) {
  return lvalue_via_qexp(f, std::vector<int>{s}, prec).front();
}

BigReal lvalue_via_moment(const XPoly& g, int k, int s, const GroupTag& group, Precision prec) {
  if (s < 1 || s > k - 1) throw DomainError("s must be an integer in [1, k−1]");
  auto [h, r] = g.divmod(group.vanishing_divisor());
  if (!r.is_zero()) throw DomainError("polynomial is not divisible by the vanishing divisor " +
                                      group.vanishing_divisor().to_string());
  auto res = integrate_moments(group, k, {{s, h}}, prec);
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real pref = two_pow(k - 2, wp) * pow(Real::pi(wp), s + 1 - k) * bridge_orientation(group);
  BigReal scale = BigReal(pref) / gamma(mpq_class(s), Precision::from_bits(wp));
  BigReal v = res.front().value * scale;
  return BigReal(v.value().with_prec(prec.bits()), v.err());
}

// ---------------------------------------------------------------- constants

BigReal omega(int D, Precision prec) {
  Precision wp = prec.plus_bits(kGuard);
  Real pi = Real::pi(wp.bits());
  Real pi32 = pi * sqrt(pi);
  BigReal v;
  if (D == -4) {
    BigReal g = gamma(mpq_class(1, 4), wp);
    v = g * g / BigReal(pi32 * 4);
  } else if (D == -8) {
    BigReal g = gamma(mpq_class(1, 8), wp) * gamma(mpq_class(3, 8), wp);
    Real two = Real(2, wp.bits());
    v = g / BigReal(pow(two, Real::from_rational(mpq_class(11, 4), wp.bits())) * pi32);
  } else {
    throw DomainError("Ω_D is provided for D = −4 and −8");
  }
  return BigReal(v.value().with_prec(prec.bits()), err_add(v.err(), ulp(v.value().with_prec(prec.bits()))));
}

BigReal omega_chowla_selberg(int D, Precision prec) {
  if (D != -4 && D != -8) throw DomainError("Ω_D is provided for D = −4 and −8");
  Precision wp = prec.plus_bits(kGuard);
  long n = -D;
  // (1/√(2π|D|))·(∏_j Γ(j/|D|)^{χ_D(j)})^{w/(4h)}, with w/(4h) = 1 for −4 and 1/2 for −8
  BigReal prod(Real(1, wp.bits()));
  for (long j = 1; j < n; ++j) {
    int c = kronecker(D, j);
    if (c == 0) continue;
    BigReal g = gamma(mpq_class(j, n), wp);
    prod = c > 0 ? prod * g : prod / g;
  }
  Real p = prod.value();
  if (D == -8) p = sqrt(p);
  Real v = p / sqrt(Real::pi(wp.bits()) * (2 * n));
  return with_rounding(v.with_prec(prec.bits()), 16);
}

std::vector<ClosedConstant> closed_constants(const GroupTag& g, int k, Precision prec) {
  if (k < 3) throw DomainError("closed constants need k ≥ 3");
  std::vector<ClosedConstant> out;
  const int e = k - 1;
  const std::string es = std::to_string(e);
  Precision wp = prec.plus_bits(kGuard);
  Real pie = pow(Real::pi(wp.bits()), e);
  auto trim = [&](const BigReal& v) { return BigReal(v.value().with_prec(prec.bits()), v.err()); };
  auto pi_power = [&] { out.push_back({ClosedConstant::Kind::PiPower, k, 0, "pi^" + es, with_rounding(pie.with_prec(prec.bits()))}); };
  auto lval = [&](int D) {
    std::string name = D == 1 ? "zeta(" + es + ")" : "L_" + std::to_string(D) + "(" + es + ")";
    out.push_back({D == 1 ? ClosedConstant::Kind::Zeta : ClosedConstant::Kind::DirichletL, k, D, name,
                   trim(dirichlet_L(D, e, wp))});
  };
  auto period = [&](int D) {
    BigReal om = omega(D, wp);
    BigReal v(pie);
    BigReal pw(Real(1, wp.bits()));
    for (int i = 0; i < e; ++i) pw = pw * om;
    out.push_back({ClosedConstant::Kind::OmegaPeriod, k, D, "pi^" + es + "*Omega_" + std::to_string(D) + "^" + es,
                   trim(v * pw)});
  };
  const bool even = k % 2 == 0;
  switch (g.label) {
    case Group::Gamma1_4:
      if (even) {
        pi_power();
        lval(1);
      } else if (k % 4 == 1) {
        period(-4);
      }
      break;
    case Group::Gamma4:
      pi_power();
      if (even) {
        lval(1);
      } else {
        lval(-4);
        period(-4);
      }
      break;
    case Group::Gamma1_8:
      pi_power();
      if (even) {
        lval(1);
        lval(8);
      } else {
        lval(-4);
        lval(-8);
        if (k % 4 == 1) period(-4);
        period(-8);
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------- CM

namespace {

BigReal cm_ratio(int level, int k, int s, int D, Precision prec, BigReal* lvalue) {
  FormHandle f = FormHandle::cm(level, k);
  BigReal L = lvalue_via_qexp(f, s, prec);
  if (level == 16) {
    // the handle is f(τ/4): L(f,s) = 4^{−s}·L(f(τ/4), s)
    L = L * mpq_class(mpz_class(1), mpz_class(1) << (2 * s));
  }
  if (lvalue) *lvalue = L;
  Precision wp = prec.plus_bits(kGuard);
  BigReal om = omega(D, wp);
  BigReal denom(pow(Real::pi(wp.bits()), s));
  for (int i = 0; i < k - 1; ++i) denom = denom * om;
  // |D|^{(s−1)/2}
  Real dpow = pow(sqrt(Real(-D, wp.bits())), s - 1);
  denom = denom * BigReal(dpow);
  return L / denom;
}

}  // namespace

CmCheck cm_lvalue_check(int level, int k, int s, Precision prec) {
  if (s < 1 || s > k - 1) throw DomainError("s must be an integer in [1, k−1]");
  int D = level == 8 ? -8 : -4;
  CmCheck out{level, k, s, D, BigReal(), BigReal(), std::nullopt, std::nullopt, false, ""};
  out.ratio = cm_ratio(level, k, s, D, prec, &out.lvalue);
  double digits = static_cast<double>(prec.digits());
  if (out.lvalue.value().is_zero() || out.lvalue.value().log10_abs() < -(digits - 10)) {
    out.zero = true;
    return out;
  }
  Precision high = prec.scaled(1.6);
  BigReal high_ratio = cm_ratio(level, k, s, D, high, nullptr);
  out.rational = recognize_rational(out.ratio, high_ratio, prec, mpz_class(1000000));
  if (!out.rational) {
    out.residual = "no rational of height < 10^6 matches " + out.ratio.to_string(30);
    auto over_sqrt2 = [](const BigReal& r) {
      Real root = sqrt(Real(2L, r.prec() + 16));
      return BigReal(r.value() / root, r.err() / root);
    };
    out.sqrt2_multiple =
        recognize_rational(over_sqrt2(out.ratio), over_sqrt2(high_ratio), prec, mpz_class(1000000));
  }
  return out;
}

}  // namespace ellk
