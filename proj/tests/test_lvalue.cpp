#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "support.hpp"

using namespace ellk;
using ellk_test::agree;
using ellk_test::digits;

namespace {

const GroupTag G14 = GroupTag::of(Group::Gamma1_4);
const GroupTag G4 = GroupTag::of(Group::Gamma4);
const GroupTag G18 = GroupTag::of(Group::Gamma1_8);

XPoly x_one_minus_x() { return XPoly({0, 1, -1}); }

}  // namespace

TEST_CASE("theta and eta on the imaginary axis") {
  Precision p = digits(50);
  Real pi = Real::pi(p.bits());
  Real one(1L, p.bits());
  Real g34 = gamma(mpq_class(3, 4), p).value();
  CHECK(agree(theta_value(3, one, p), root(pi, 4) / g34, 48));
  Real g14 = gamma(mpq_class(1, 4), p).value();
  CHECK(agree(eta_value(one, p), g14 / (2 * pow(root(pi, 4), 3)), 48));

  // Jacobi identity θ₃⁴ = θ₂⁴ + θ₄⁴ at small and large y
  for (const char* y : {"0.05", "0.7", "3"}) {
    Real yy = Real::from_string(y, p.bits());
    Real lhs = pow(theta_value(3, yy, p).value(), 4);
    Real rhs = pow(theta_value(2, yy, p).value(), 4) + pow(theta_value(4, yy, p).value(), 4);
    CHECK(agree(lhs, rhs, 45));
  }
  // η(i/y) = √y·η(iy)
  Real y = Real::from_string("0.3", p.bits());
  CHECK(agree(eta_value(1 / y, p), sqrt(y) * eta_value(y, p).value(), 45));
}

TEST_CASE("modular lambda and its inverse") {
  Precision p = digits(50);
  Real one(1L, p.bits());
  CHECK(agree(m_of_t(one, p), one / 2, 48));
  CHECK(agree(t_of_m(one / 2, p), one, 48));
  BigReal far = m_of_t(Real(10L, p.bits()), p);
  CHECK(far.value() > 0);
  CHECK(far.value().log10_abs() < -10);
  Real t = Real::from_string("0.37", p.bits());
  CHECK(agree(t_of_m(m_of_t(t, p).value(), p), t, 45));
  CHECK(m_of_t(Real::from_string("0.5", p.bits()), p).value() > m_of_t(Real(2L, p.bits()), p).value());
}

TEST_CASE("form evaluation") {
  Precision p = digits(40);
  Real one(1L, p.bits());
  FormHandle f = monomial_basis(G14, 4)[0];
  Real k_half = ellip_K(BigReal(one / 2), p).value();
  Real expected = pow(2 * k_half / Real::pi(p.bits()), 4);
  CHECK(agree(eval_form(f, one, p), expected, 36));
  // small t goes through the cusp at 0
  Real t = Real::from_string("0.2", p.bits());
  Real m = m_of_t(t, p).value();
  Real k_m = ellip_K(BigReal(m), p).value();
  CHECK(agree(eval_form(f, t, p), pow(2 * k_m / Real::pi(p.bits()), 4), 34));
  // eta handles use B₂: (B₂η(2τ)¹²)(it) = η(it)¹²
  FormHandle eta = FormHandle::eta({{2, 12}});
  CHECK(agree(eval_form(eta, t, p), pow(eta_value(t, p).value(), 12), 34));
}

TEST_CASE("two L-value routes") {
  Precision p = digits(40);
  FormHandle f = FormHandle::eta({{2, 12}});
  BigReal via_q = lvalue_via_qexp(f, 5, p);
  BigReal via_m = lvalue_via_moment(x_one_minus_x(), 6, 5, G14, p);
  CHECK(agree(via_m, via_q.value() * 16, 32));
  // ∫K⁴ = 24·L(η(2τ)¹², 5)
  BigReal k4 = compute_moment({G14, 6, 1, 0}, p);
  CHECK(agree(k4, via_q.value() * 24, 32));
  // bridge at k = 4, s = 2: ∫K K' = π³/8 gives L = π²/2
  Real pi = Real::pi(p.bits());
  CHECK(agree(lvalue_via_moment(x_one_minus_x(), 4, 2, G14, p), pi * pi / 2, 32));

  auto several = lvalue_via_qexp(f, {1, 2, 3, 4, 5}, p);
  REQUIRE(several.size() == 5);
  CHECK(agree(several[4], via_q, 35));

  // Γ₁(8): η(2τ)⁴η(4τ)⁴ at s = 3 through both routes
  FormHandle g = FormHandle::eta({{2, 4}, {4, 4}});
  XPoly pg = p_map(g.with_group(G18));
  CHECK(agree(lvalue_via_moment(pg, 4, 3, G18, p), lvalue_via_qexp(g, 3, p), 32));

  CHECK_THROWS_AS(lvalue_via_moment(XPoly({1, 1}), 4, 2, G14, p), DomainError);
  CHECK_THROWS_AS(lvalue_via_qexp(monomial_basis(G14, 4)[0], 2, p), DomainError);
  CHECK_THROWS_AS(lvalue_via_qexp(f, 6, p), DomainError);
}

TEST_CASE("Chowla-Selberg periods") {
  Precision p = digits(60);
  Real pi = Real::pi(p.bits());
  Real g14 = gamma(mpq_class(1, 4), p).value();
  CHECK(agree(omega(-4, p), g14 * g14 / (4 * pow(sqrt(pi), 3)), 58));
  CHECK(agree(omega(-4, p), omega_chowla_selberg(-4, p), 55));
  CHECK(agree(omega(-8, p), omega_chowla_selberg(-8, p), 55));
  CHECK_THROWS(omega(-3, p));
}

TEST_CASE("closed constants") {
  Precision p = digits(30);
  auto c5 = closed_constants(G14, 5, p);
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].kind == ClosedConstant::Kind::OmegaPeriod);
  CHECK(c5[0].D == -4);
  CHECK(closed_constants(G14, 7, p).empty());
  auto c7 = closed_constants(G18, 7, p);
  REQUIRE(c7.size() == 4);
  CHECK(c7[0].kind == ClosedConstant::Kind::PiPower);
  CHECK(c7[1].kind == ClosedConstant::Kind::DirichletL);
  CHECK(c7[1].D == -4);
  CHECK(c7[2].D == -8);
  CHECK(c7[3].kind == ClosedConstant::Kind::OmegaPeriod);
  auto c4 = closed_constants(G4, 4, p);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].kind == ClosedConstant::Kind::PiPower);
  CHECK(c4[1].kind == ClosedConstant::Kind::Zeta);
  Real pi = Real::pi(p.bits());
  CHECK(agree(c4[0].value, pow(pi, 3), 28));
}

TEST_CASE("CM L-values") {
  Precision p = digits(40);
  CmCheck a = cm_lvalue_check(8, 3, 2, p);
  REQUIRE(a.rational);
  CHECK(*a.rational == mpq_class(1, 12));
  CmCheck b = cm_lvalue_check(4, 5, 2, p);
  CHECK((b.rational || b.zero));
  CmCheck c = cm_lvalue_check(16, 3, 1, p);
  CHECK((c.rational || c.zero));
  // level 8, weight 5: the ratio is a rational multiple of √2
  CmCheck d = cm_lvalue_check(8, 5, 2, p);
  CHECK_FALSE(d.rational);
  REQUIRE(d.sqrt2_multiple);
  CHECK(*d.sqrt2_multiple == mpq_class(1, 2));
  CHECK_THROWS(cm_lvalue_check(8, 3, 3, p));
}
