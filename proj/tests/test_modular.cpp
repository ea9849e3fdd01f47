#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellk/modular.hpp"
#include "support.hpp"

using namespace ellk;

namespace {

const GroupTag G14 = GroupTag::of(Group::Gamma1_4);
const GroupTag G4 = GroupTag::of(Group::Gamma4);
const GroupTag G18 = GroupTag::of(Group::Gamma1_8);
const CharacterTag kOne = CharacterTag::of(Character::Trivial);
const CharacterTag kM8 = CharacterTag::of(Character::ChiM8);

XPoly poly(std::vector<Sqrt2Elem> c) { return XPoly(std::move(c)); }

}  // namespace

TEST_CASE("group tags") {
  CHECK(GroupTag::parse("g1_4") == G14);
  CHECK(GroupTag::parse("g4") == G4);
  CHECK(GroupTag::parse("g1_8") == G18);
  CHECK(G18.name() == "g1_8");
  CHECK_THROWS_AS(GroupTag::parse("g2"), DomainError);
  CHECK(GroupTag::all().size() == 3);
}

TEST_CASE("XPoly") {
  XPoly p = poly({1, 2, 1});  // (1+X)²
  auto [q, r] = p.divmod(poly({1, 1}));
  CHECK(q == poly({1, 1}));
  CHECK(r.is_zero());
  CHECK(p.degree() == 2);
  CHECK(XPoly().degree() == -1);
  Precision prec = Precision::from_digits(30);
  CHECK(ellk_test::agree(p.evaluate(Real(2L, prec.bits())), Real(9L, prec.bits()), 28));
  CHECK(XPoly::from_json(p.to_json()) == p);
  XPoly s = poly({Sqrt2Elem::sqrt2(), 1});
  CHECK_FALSE(s.is_rational());
  CHECK((s * poly({Sqrt2Elem(mpq_class(0), mpq_class(-1)), 1})) == poly({-2, 0, 1}));
}

TEST_CASE("space dimensions") {
  CHECK(space_dimension(G14, 4) == 3);
  CHECK(space_dimension(G14, 5) == 3);
  CHECK(space_dimension(G4, 3) == 7);
  CHECK(space_dimension(G18, 5) == 11);
  for (int k = 3; k <= 8; ++k) {
    CHECK(space_dimension(G14, k) == k / 2 + 1);
    CHECK(space_dimension(G4, k) == 2 * k + 1);
    CHECK(space_dimension(G18, k) == 2 * k + 1);
  }
}

TEST_CASE("monomial basis and the P-map") {
  long N = grid_index(12);
  for (int k : {3, 4, 6}) {
    auto basis = monomial_basis(G14, k);
    CHECK(static_cast<long>(basis.size()) == space_dimension(G14, k));
    CHECK(basis[0].expansion(N).agrees_with(theta_series(3, 1, N).pow(2 * k)));
    CHECK(p_map(basis[0]) == poly({1}));
  }
  CHECK(p_map(p_inverse(XPoly::monomial(3), 6, G14)) == XPoly::monomial(3));
  CHECK(p_map(p_inverse(XPoly::monomial(5), 3, G4)) == XPoly::monomial(5));
  XPoly s = poly({Sqrt2Elem::sqrt2(), 1, 0, Sqrt2Elem(mpq_class(2), mpq_class(-1, 3))});
  CHECK(p_map(p_inverse(s, 4, G18)) == s);

  // 16·η(2τ)¹² ↦ X(1−X)
  FormHandle eta = FormHandle::eta({{2, 12}}).with_group(G14);
  CHECK(p_map(eta) * Sqrt2Elem(16) == poly({0, 1, -1}));
  // η(2τ)⁴η(4τ)⁴ has level 8; η(τ)¹² needs the full Γ(4)
  CHECK_NOTHROW(p_map(FormHandle::eta({{2, 4}, {4, 4}}).with_group(G18)));
  CHECK_THROWS(p_map(FormHandle::eta({{2, 4}, {4, 4}}).with_group(G14)));
  CHECK_NOTHROW(p_map(FormHandle::eta({{1, 12}}).with_group(G4)));
  CHECK_THROWS(p_map(FormHandle::eta({{1, 12}}).with_group(G14)));
  // M_6(Γ₁(4)) ⊂ M_6(Γ₁(8))
  CHECK_NOTHROW(p_map(FormHandle::eta({{2, 12}}).with_group(G18)));

  // generator-polynomial handles agree with their q-expansions
  ThetaPolynomial tp = ThetaPolynomial::from_xpoly(G14, XPoly::monomial(1), 4);
  FormHandle viaTheta = FormHandle::from_theta(G14, tp, 4);
  CHECK(viaTheta.expansion(N).agrees_with(monomial_basis(G14, 4)[1].expansion(N)));
}

TEST_CASE("vanishing subspaces and the divisor") {
  auto b = vanishing_subspace_basis(G14, 4);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == poly({0, 1, -1}));
  auto b4 = vanishing_subspace_basis(G4, 3);
  CHECK(b4.size() == 5);
  for (const auto& v : b4) CHECK(v.divmod(G4.vanishing_divisor()).second.is_zero());
  auto b8 = vanishing_subspace_basis(G18, 5);
  CHECK(b8.size() == 9);
  for (const auto& v : b8) CHECK(v.divmod(G18.vanishing_divisor()).second.is_zero());
  // (X−1)(X−√2)
  CHECK(G18.vanishing_divisor() == poly({Sqrt2Elem::sqrt2(), Sqrt2Elem(-1, -1), 1}));
}

TEST_CASE("moment weight functions") {
  CHECK(moment_weight_function(G14).denominator == poly({1}));
  CHECK(moment_weight_function(G4).denominator == XPoly::monomial(3) * poly({1, 1}) * poly({1, 0, 1}));
  XPoly expected = poly({-1, 1}) * XPoly::monomial(2) * poly({1, 1}) * poly({1, 1}) * poly({Sqrt2Elem::sqrt2(), 1});
  CHECK(moment_weight_function(G18).denominator == expected);
}

TEST_CASE("Eisenstein bases") {
  auto even = eisenstein_basis(G14, 6);
  REQUIRE(even.terms.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(even.terms[j].psi == kOne);
    CHECK(even.terms[j].phi == kOne);
  }
  CHECK(even.terms[0].t == 1);
  CHECK(even.terms[1].t == 2);
  CHECK(even.terms[2].t == 4);
  CHECK(eisenstein_basis(G14, 5).terms.empty());
  CHECK(eisenstein_vanishing_combination(G14, 5).empty());
  auto odd8 = eisenstein_basis(G18, 5);
  REQUIRE(odd8.terms.size() == 6);
  CHECK(odd8.terms.back().psi == kM8);
  CHECK(odd8.terms.back().phi == kOne);
  CHECK(odd8.terms.back().t == 1);

  auto combos = eisenstein_vanishing_combination(G14, 6);
  REQUIRE(combos.size() == 1);
  Sqrt2Elem lead = combos[0].coeffs[0];
  CHECK(combos[0].coeffs[1] / lead == Sqrt2Elem(-65));
  CHECK(combos[0].coeffs[2] / lead == Sqrt2Elem(64));
}

TEST_CASE("Fricke involution on Eisenstein series") {
  EisensteinDescriptor e{kOne, kOne, 1};
  FrickeImage w = fricke_eisenstein(4, e, 4);
  CHECK(w.target == EisensteinDescriptor{kOne, kOne, 4});
  CHECK(w.coefficient == Sqrt2Elem(16));

  for (const auto& g : GroupTag::all())
    for (int k : {3, 4, 5, 6}) {
      auto basis = eisenstein_basis(g, k);
      for (const auto& d : basis.terms) {
        FrickeImage once = fricke_eisenstein(k, d, basis.level);
        FrickeImage twice = fricke_eisenstein(k, once.target, basis.level);
        CHECK(twice.target == d);
        CHECK(once.coefficient * twice.coefficient == Sqrt2Elem(1));
      }
    }
  CHECK_THROWS_AS(fricke_eisenstein(4, EisensteinDescriptor{kOne, kOne, 3}, 4), DomainError);

  // E₄(i/2) = 16·E₄(2i), from the q-series at both points
  Precision p = Precision::from_digits(40);
  auto c = eisenstein_coefficients(4, kOne, kOne, 200);
  auto evaluate = [&](const Real& y) {
    Real q = exp(-2 * Real::pi(p.bits()) * y);
    Real sum = Real::from_rational(c[0], p.bits());
    Real qn(1L, p.bits());
    for (std::size_t n = 1; n < c.size(); ++n) {
      qn *= q;
      sum += Real::from_rational(c[n], p.bits()) * qn;
    }
    return sum;
  };
  Real half = Real::from_rational(mpq_class(1, 2), p.bits());
  CHECK(ellk_test::agree(evaluate(half), 16 * evaluate(Real(2L, p.bits())), 35));
}

TEST_CASE("Eisenstein constant terms") {
  CHECK(eisenstein_constant_term(4, {kOne, kOne, 1}) == mpq_class(1, 240));
  CHECK(eisenstein_constant_term(3, {CharacterTag::of(Character::ChiM4), kOne, 1}) == 0);
}

TEST_CASE("cusp expansions of a cusp form vanish at both cusps") {
  CuspExpansions c = cusp_expansions(p_inverse(poly({0, 1, -1}), 6, G14), grid_index(8));
  CHECK(c.infinity[0].is_zero());
  CHECK(c.zero[0].is_zero());
}
