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

}  // namespace

TEST_CASE("moment specs") {
  CHECK_NOTHROW(MomentSpec({G14, 4, 1, 0}).validate());
  CHECK_THROWS_AS(MomentSpec({G14, 4, 1, 1}).validate(), DomainError);
  CHECK_THROWS_AS(MomentSpec({G14, 4, 4, 0}).validate(), DomainError);
  CHECK_THROWS_AS(MomentSpec({G14, 4, 0, 0}).validate(), DomainError);
  CHECK_THROWS_AS(MomentSpec({G4, 2, 1, 0}).validate(), DomainError);
  CHECK_NOTHROW(MomentSpec({G4, 3, 2, 4}).validate());
  CHECK_THROWS_AS(MomentSpec({G4, 3, 2, 5}).validate(), DomainError);
  CHECK(max_moment_index(G14, 7) == 1);
  CHECK(max_moment_index(G4, 5) == 8);
  CHECK(max_moment_index(G18, 5) == 8);
  CHECK(bridge_orientation(G14) == 1);
  CHECK(bridge_orientation(G18) == -1);
  auto j = MomentSpec({G18, 5, 2, 3}).to_json();
  CHECK(j["gamma"] == "g1_8");
  CHECK(j["i"] == 3);
}

TEST_CASE("integrand descriptions") {
  CHECK(integrand_description({G14, 4, 1, 0}).rfind("K(m)^2 K(1-m)^0", 0) == 0);
  std::string g4 = integrand_description({G4, 3, 1, 0});
  CHECK(g4.find("X^3") != std::string::npos);
  CHECK(g4.find("m = X^4") != std::string::npos);
  std::string g8 = integrand_description({G18, 3, 1, 0});
  CHECK(g8.find("sqrt2") != std::string::npos);
}

TEST_CASE("closed-form moments") {
  Precision p = digits(60);
  Real pi = Real::pi(p.bits());
  BigReal k2 = compute_moment({G14, 4, 1, 0}, p);
  CHECK(agree(k2, zeta(3, p).value() * 7 / 2, 50));
  CHECK(agree(compute_moment({G14, 4, 2, 0}, p), pow(pi, 3) / 8, 50));
  Real om = omega(-4, p).value();
  CHECK(agree(compute_moment({G14, 5, 1, 0}, p), pow(pi * om, 4) * 4 / 5, 50));
  CHECK(agree(compute_moment({G14, 5, 2, 0}, p), pow(pi * om, 4) * 2 / 3, 50));

  // Γ(4), k = 3: −π²/16 + L₋₄(2) + Γ(1/4)⁴/(16π)
  Real g14 = gamma(mpq_class(1, 4), p).value();
  Real expected = -(pi * pi) / 16 + dirichlet_L(-4, 2, p).value() + pow(g14, 4) / (16 * pi);
  CHECK(agree(compute_moment({G4, 3, 1, 0}, p), expected, 50));
}

TEST_CASE("moments through the L-value bridge") {
  Precision p = digits(40);
  for (const MomentSpec& spec : {MomentSpec{G14, 6, 2, 1}, MomentSpec{G4, 4, 2, 3}, MomentSpec{G18, 5, 3, 6},
                                 MomentSpec{G18, 4, 1, 0}}) {
    CAPTURE(spec.describe());
    CHECK(agree(compute_moment(spec, p), moment_via_lvalue(spec, p), 32));
  }
}

TEST_CASE("moment families") {
  Precision p = digits(30);
  CHECK(moment_family(G14, 4, p).values.size() == 3);
  CHECK(moment_family(G14, 7, p).values.size() == 12);
  CHECK(moment_family(G14, 9, p).values.size() == 24);
  const MomentFamily& f = moment_family(G4, 3, p);
  CHECK(f.values.size() == 10);
  CHECK(f.specs[5].s == 2);
  CHECK(f.specs[5].i == 0);
  // cached by reference
  CHECK(&moment_family(G4, 3, p) == &f);
  CHECK(agree(f.values[0], compute_moment({G4, 3, 1, 0}, p), 28));
}

TEST_CASE("auxiliary weight-4 moments") {
  Precision p = digits(40);
  Integrand x1_direct = [&](const Abscissa& x) {
    Real k = ellip_K_from_complement(x.to_b, p.bits() + 16);
    return k * k / pow(root(x.from_a, 4), 3);
  };
  auto q1 = tanh_sinh_integrate(x1_direct, Real(0L, p.bits()), Real(1L, p.bits()), p, 14);
  CHECK(agree(named_moment(1, p), q1.value, 30));
  // x₂ = 8·L(η(2τ)⁴η(4τ)⁴, 3)
  CHECK(agree(named_moment(2, p), lvalue_via_qexp(FormHandle::eta({{2, 4}, {4, 4}}), 3, p).value() * 8, 34));
  CHECK_THROWS(named_moment(3, p));
}
