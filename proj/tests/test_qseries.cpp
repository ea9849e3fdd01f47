#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellk/exact.hpp"
#include "ellk/qseries.hpp"

using namespace ellk;

namespace {

const CharacterTag kTrivial = CharacterTag::of(Character::Trivial);
const CharacterTag kM4 = CharacterTag::of(Character::ChiM4);
const CharacterTag k8 = CharacterTag::of(Character::Chi8);
const CharacterTag kM8 = CharacterTag::of(Character::ChiM8);

// coefficient of q^{n} (integral power)
Sqrt2Elem at_q(const QSeries& f, long n) { return f[grid_index(n)]; }

}  // namespace

TEST_CASE("Sqrt2Elem arithmetic and parsing") {
  Sqrt2Elem x(mpq_class(1), mpq_class(1));  // 1 + √2
  CHECK(x * x.conjugate() == Sqrt2Elem(-1));
  CHECK(x * x.inverse() == Sqrt2Elem(1));
  CHECK(x.norm() == -1);
  CHECK(Sqrt2Elem::sqrt2_pow(2) == Sqrt2Elem(2));
  CHECK(Sqrt2Elem::sqrt2_pow(-1) == Sqrt2Elem(mpq_class(0), mpq_class(1, 2)));
  CHECK(Sqrt2Elem(mpq_class(1), mpq_class(-1)).sign() == -1);
  CHECK(parse_sqrt2("3/4") == Sqrt2Elem(mpq_class(3, 4)));
  CHECK(parse_sqrt2("-33630-285*sqrt2") == Sqrt2Elem(mpq_class(-33630), mpq_class(-285)));
  CHECK(parse_sqrt2("-8/3*sqrt2") == Sqrt2Elem(mpq_class(0), mpq_class(-8, 3)));
  CHECK(parse_sqrt2(x.to_string()) == x);
}

TEST_CASE("Dirichlet characters") {
  CHECK(char_value(kM4, 3) == -1);
  CHECK(char_value(kM4, 2) == 0);
  CHECK(char_value(k8, 2) == 0);
  CHECK(char_value(k8, 7) == 1);
  CHECK(char_value(kM8, 3) == 1);
  CHECK(char_value(kM8, 5) == -1);
  CHECK(char_value(kTrivial, 6) == 1);
  CHECK(CharacterTag::from_discriminant(-8) == kM8);
}

TEST_CASE("Gauss sums") {
  GaussSumValue g4 = gauss_sum(kM4);
  CHECK(g4.imaginary);
  CHECK(g4.magnitude == Sqrt2Elem(2));
  GaussSumValue g8 = gauss_sum(k8);
  CHECK_FALSE(g8.imaginary);
  CHECK(g8.magnitude == Sqrt2Elem(mpq_class(0), mpq_class(2)));
  CHECK(g8.magnitude_squared() == 8);
  GaussSumValue g1 = gauss_sum(kTrivial);
  CHECK(g1.magnitude == Sqrt2Elem(1));
  CHECK(gauss_sum(kM8).imaginary);
}

TEST_CASE("generalized Bernoulli numbers") {
  // L(0, χ₋₄) = 1/2, L(−2, χ₋₄) = −1/2 (Euler numbers)
  CHECK(l_value_at_negative(1, kM4) == mpq_class(1, 2));
  CHECK(l_value_at_negative(3, kM4) == mpq_class(-1, 2));
  // ζ(−3) = 1/120
  CHECK(l_value_at_negative(4, kTrivial) == mpq_class(1, 120));
  // B_{1,χ₋₈} = −2 = −h·w/… gives L(0, χ₋₈) = 1
  CHECK(l_value_at_negative(1, kM8) == 1);
}

TEST_CASE("theta series") {
  QSeries t3 = theta_series(3, 1, grid_index(5));
  QSeries expected3(grid_index(5));
  expected3.set(0, 1);
  expected3.set(4, 2);
  expected3.set(16, 2);
  expected3.set(36, 2);
  CHECK(t3.agrees_with(expected3));
  CHECK(t3.order() == grid_index(5));

  QSeries t2 = theta_series(2, 1, grid_index(2));
  QSeries expected2(grid_index(2));
  expected2.set(1, 2);
  expected2.set(9, 2);
  CHECK(t2.agrees_with(expected2));

  QSeries t4 = theta_series(4, 1, grid_index(3));
  QSeries expected4(grid_index(3));
  expected4.set(0, 1);
  expected4.set(4, -2);
  expected4.set(16, 2);
  CHECK(t4.agrees_with(expected4));
}

TEST_CASE("series arithmetic and theta identities") {
  long N = grid_index(20);
  QSeries t2 = theta_series(2, 1, N), t3 = theta_series(3, 1, N), t4 = theta_series(4, 1, N);
  CHECK((t2.pow(4) + t4.pow(4) - t3.pow(4)).is_zero());
  QSeries lhs = t2.pow(2);
  QSeries rhs = theta_series(3, 2, N) * theta_series(2, 2, N) * Sqrt2Elem(2);
  CHECK((lhs - rhs).is_zero());
  CHECK((t3 * QSeries::constant(1, N)).agrees_with(t3));
  CHECK((t3 * t3.inverse()).agrees_with(QSeries::constant(1, N)));
  CHECK((t3.pow(-2) * t3.pow(2)).agrees_with(QSeries::constant(1, N)));
  CHECK_THROWS(t2.pow(-1));
  CHECK(t2.valuation() == 1);
  CHECK(t3.rescaled(2).agrees_with(theta_series(3, 2, N)));
  CHECK(QSeries::from_json(t2.to_json()).agrees_with(t2));
  CHECK(QSeries::from_json(t2.to_json()).order() == t2.order());
}

TEST_CASE("eta products") {
  QSeries f = eta_product({{2, 12}}, grid_index(14));
  std::vector<long> odd = {1, -12, 54, -88, -99, 540, -418};
  for (std::size_t j = 0; j < odd.size(); ++j) {
    CHECK(at_q(f, 2 * static_cast<long>(j) + 1) == Sqrt2Elem(odd[j]));
    CHECK(at_q(f, 2 * static_cast<long>(j)) == Sqrt2Elem(0));
  }
  QSeries g = eta_product({{2, 4}, {4, 4}}, grid_index(8));
  CHECK(at_q(g, 1) == Sqrt2Elem(1));
  CHECK(at_q(g, 3) == Sqrt2Elem(-4));
  CHECK(at_q(g, 5) == Sqrt2Elem(-2));
  CHECK(at_q(g, 7) == Sqrt2Elem(24));
  // recomputation at a higher order keeps the low coefficients
  CHECK(eta_product({{2, 12}}, grid_index(30)).agrees_with(f));
  // (θ₂θ₃θ₄)⁴ = 16η¹²
  long N = grid_index(12);
  QSeries prod = (theta_series(2, 1, N) * theta_series(3, 1, N) * theta_series(4, 1, N)).pow(4);
  CHECK(prod.agrees_with(eta_product({{1, 12}}, N) * Sqrt2Elem(16)));
}

TEST_CASE("Eisenstein series") {
  auto e4 = eisenstein_coefficients(4, kTrivial, kTrivial, 5);
  CHECK(e4[0] == mpq_class(1, 240));
  CHECK(e4[1] == 1);
  CHECK(e4[2] == 9);
  CHECK(e4[3] == 28);
  QSeries e = eisenstein_qexp(3, kM4, kTrivial, 2, grid_index(10));
  CHECK(e.valuation() == grid_index(2));
  CHECK(at_q(e, 2) == Sqrt2Elem(1));
  // ψ trivial: constant term L(1−k, φ)/2 = L(−2, χ₋₄)/2
  QSeries c = eisenstein_qexp(3, kTrivial, kM4, 1, grid_index(4));
  CHECK(at_q(c, 0) == Sqrt2Elem(mpq_class(-1, 4)));
  QSeries e5 = eisenstein_qexp(5, kM4, kTrivial, 1, grid_index(6));
  CHECK(at_q(e5, 0) == Sqrt2Elem(0));
  CHECK(at_q(e5, 1) == Sqrt2Elem(1));
  CHECK_THROWS(eisenstein_qexp(5, kM4, kM4, 1, grid_index(6)));
  CHECK_THROWS(eisenstein_qexp(4, kM4, kTrivial, 1, grid_index(6)));
}

TEST_CASE("CM forms") {
  QSeries f = cm_form_qexp(4, 5, grid_index(12));
  CHECK(at_q(f, 1) == Sqrt2Elem(1));
  CHECK(at_q(f, 2) == Sqrt2Elem(-4));
  CHECK(at_q(f, 3) == Sqrt2Elem(0));
  CHECK(at_q(f, 6) == at_q(f, 2) * at_q(f, 3));
  CHECK(at_q(f, 10) == at_q(f, 2) * at_q(f, 5));
  QSeries g = cm_form_qexp(8, 3, grid_index(12));
  CHECK(at_q(g, 1) == Sqrt2Elem(1));
  CHECK(at_q(g, 10) == at_q(g, 2) * at_q(g, 5));
  // η(τ)²η(2τ)η(4τ)η(8τ)² is the level-8 weight-3 CM form
  CHECK(g.agrees_with(eta_product({{1, 2}, {2, 1}, {4, 1}, {8, 2}}, grid_index(12))));
  QSeries h = cm_form_qexp(16, 3, grid_index(16));
  CHECK(at_q(h, 1) == Sqrt2Elem(1));
  CHECK(at_q(h, 3) * at_q(h, 5) == at_q(h, 15));
  CHECK_THROWS(cm_form_qexp(4, 3, grid_index(4)));
  CHECK_THROWS(cm_form_qexp(8, 4, grid_index(4)));
  CHECK_THROWS(cm_form_qexp(16, 5, grid_index(4)));
}

TEST_CASE("exact linear algebra") {
  Sqrt2Matrix A = {{1, 2}, {3, 4}};
  auto x = solve_exact(A, {5, 6});
  REQUIRE(x);
  CHECK((*x)[0] == Sqrt2Elem(-4));
  CHECK((*x)[1] == Sqrt2Elem(mpq_class(9, 2)));
  Sqrt2Matrix B = {{1, 1}, {2, 2}};
  long bad = -1;
  CHECK_FALSE(solve_exact(B, {1, 3}, &bad));
  CHECK(bad == 1);
  auto ns = nullspace_exact(B, 2);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] == Sqrt2Elem(1));
  CHECK(ns[0][1] == Sqrt2Elem(-1));
}
