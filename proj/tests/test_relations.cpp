#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "ellk/relations.hpp"
#include "support.hpp"

using namespace ellk;
using ellk_test::digits;

namespace {

const GroupTag G14 = GroupTag::of(Group::Gamma1_4);
const GroupTag G4 = GroupTag::of(Group::Gamma4);
const GroupTag G18 = GroupTag::of(Group::Gamma1_8);

Real pi_pow(long n, Precision p) { return pow(Real::pi(p.bits() + 32), n); }

std::vector<mpz_class> ints(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("PSLQ over the integers") {
  Precision p = digits(50);
  auto r = pslq({pi_pow(3, p) / 8, pi_pow(3, p)}, p, mpz_class(1000000));
  REQUIRE(r.status == PslqStatus::Found);
  CHECK(r.coeffs == ints({8, -1}));

  Real z3 = zeta(3, p.plus_bits(32)).value();
  auto r2 = pslq({z3 * 7 / 2, z3}, p, mpz_class(1000000));
  REQUIRE(r2.status == PslqStatus::Found);
  CHECK(r2.coeffs == ints({2, -7}));

  Precision p100 = digits(100);
  auto none = pslq({Real(1L, p100.bits() + 32), pi_pow(1, p100), pi_pow(2, p100)}, p100, mpz_class("10000000000"));
  CHECK(none.status == PslqStatus::NoneFound);

  // too little precision for the requested height
  Precision p30 = digits(30);
  auto unsure = pslq({Real(1L, p30.bits()), pi_pow(1, p30), pi_pow(2, p30)}, p30, mpz_class("10000000000"));
  CHECK(unsure.status == PslqStatus::Inconclusive);

  // a zero entry is its own relation
  auto zero = pslq({Real(0L, p.bits()), pi_pow(1, p)}, p, mpz_class(100));
  REQUIRE(zero.status == PslqStatus::Found);
  CHECK(zero.coeffs == ints({1, 0}));
}

TEST_CASE("PSLQ over Z[sqrt2]") {
  Precision p = digits(50);
  Real r2 = sqrt(Real(2L, p.bits() + 32));
  std::vector<Sqrt2Elem> folded;
  auto r = relation_over_sqrt2_raw({1 + r2, Real(1L, p.bits() + 32)}, p, mpz_class(1000), folded);
  REQUIRE(r.status == PslqStatus::Found);
  REQUIRE(folded.size() == 2);
  // proportional to (1, −(1+√2))
  CHECK(folded[1] / folded[0] == Sqrt2Elem(mpq_class(-1), mpq_class(-1)));

  // rational inputs give rational coefficients
  Real pi = Real::pi(p.bits() + 32);
  auto rq = relation_over_sqrt2_raw({pi * 3, pi}, p, mpz_class(1000), folded);
  REQUIRE(rq.status == PslqStatus::Found);
  CHECK(folded[0].is_rational());
  CHECK(folded[1].is_rational());
  CHECK(folded[1] / folded[0] == Sqrt2Elem(-3));
}

TEST_CASE("certified relation search") {
  Precision p = digits(40);
  ValueSource v = [](Precision q) {
    Real pi = Real::pi(q.bits() + 16);
    return std::vector<BigReal>{BigReal(pi * pi / 6), zeta(2, q)};
  };
  RelationSearch s = find_relation(v, Field::Rational, p, mpz_class(1000));
  REQUIRE(s.status == PslqStatus::Found);
  REQUIRE(s.relation);
  CHECK(s.relation->certified);
  CHECK(s.relation->certified_at_bits >= p.scaled(1.5).bits());
  CHECK(s.relation->coeffs[0] == Sqrt2Elem(1));
  CHECK(s.relation->coeffs[1] == Sqrt2Elem(-1));
  auto j = s.relation->to_json();
  CHECK(j["coeffs"][0][0] == "1");
  CHECK(j.contains("certified_at_bits"));

  // a near-relation below the detection threshold at 40 digits fails certification at 60
  ValueSource fake = [](Precision q) {
    Real pi = Real::pi(q.bits() + 16);
    Real bump = Real::from_string("1e-33", q.bits() + 16);
    return std::vector<BigReal>{BigReal(pi + bump), BigReal(pi)};
  };
  RelationSearch f = find_relation(fake, Field::Rational, digits(40), mpz_class(1000));
  CHECK_FALSE((f.relation && f.relation->certified));
}

TEST_CASE("numeric rank") {
  Precision p = digits(60);
  ValueSource k4 = [](Precision q) {
    std::vector<BigReal> v = moment_family(G14, 4, q).values;
    v.push_back(zeta(3, q));
    v.push_back(BigReal(pow(Real::pi(q.bits() + 16), 3)));
    return v;
  };
  RankResult r = numeric_rank(k4, Field::Rational, p, mpz_class(1000000));
  CHECK(r.verified);
  CHECK(r.rank == 2);
  CHECK(r.relations.size() == 3);

  ValueSource k5 = [](Precision q) { return moment_family(G14, 5, q).values; };
  RankResult r5 = numeric_rank(k5, Field::Rational, p, mpz_class(1000000));
  CHECK(r5.rank == 1);
  CHECK(r5.relations.size() == 3);

  ValueSource random3 = [](Precision q) {
    long b = q.bits() + 16;
    return std::vector<BigReal>{BigReal(log(Real(3L, b))), BigReal(sqrt(Real(5L, b))), BigReal(exp(Real(1L, b)))};
  };
  RankResult rr = numeric_rank(random3, Field::Rational, p, mpz_class(1000000));
  CHECK(rr.verified);
  CHECK(rr.rank == 3);
  CHECK(rr.relations.empty());
}

TEST_CASE("expressing a value in a basis") {
  Precision p = digits(50);
  ValueSource self = [](Precision q) {
    Real pi = Real::pi(q.bits() + 16);
    return std::vector<BigReal>{BigReal(pi), BigReal(pi), zeta(3, q)};
  };
  auto e = express_in_basis(self, Field::Rational, p, mpz_class(1000));
  REQUIRE(e);
  CHECK(e->coeffs[0] == Sqrt2Elem(1));
  CHECK(e->coeffs[1] == Sqrt2Elem(0));

  // ∫K K' over {π³} with coefficient 1/8
  ValueSource kk = [](Precision q) {
    return std::vector<BigReal>{compute_moment({G14, 4, 2, 0}, q), BigReal(pow(Real::pi(q.bits() + 16), 3))};
  };
  auto e2 = express_in_basis(kk, Field::Rational, p, mpz_class(1000));
  REQUIRE(e2);
  CHECK(e2->coeffs[0] == Sqrt2Elem(mpq_class(1, 8)));
}

TEST_CASE("rational recognition") {
  Precision p = digits(40);
  Precision h = p.scaled(1.5);
  BigReal x(Real::from_rational(mpq_class(-432, 175), p.bits()));
  BigReal xh(Real::from_rational(mpq_class(-432, 175), h.bits()));
  auto q = recognize_rational(x, xh, p, mpz_class(1000000));
  REQUIRE(q);
  CHECK(*q == mpq_class(-432, 175));
  BigReal pi(Real::pi(p.bits())), pih(Real::pi(h.bits()));
  CHECK_FALSE(recognize_rational(pi, pih, p, mpz_class(1000000)));
}

TEST_CASE("dimension bounds") {
  CHECK(dimension_bound(G14, 6) == 4);
  CHECK(dimension_bound(G14, 5) == 1);
  CHECK(dimension_bound(G14, 4) == 2);
  CHECK(dimension_bound(G4, 7) == 7);
  CHECK(dimension_bound(G4, 3) == 3);
  CHECK(dimension_bound(G18, 5) == 7);
  for (const auto& g : GroupTag::all())
    for (int k = 3; k <= 20; ++k) {
      ComponentDims c = component_dims(g, k);
      CHECK(c.eisenstein_constants + c.cusp_bound == dimension_bound(g, k));
      CHECK(c.cusp_bound >= 0);
    }
  CHECK(component_dims(G18, 6).eisenstein_constants == 3);
  CHECK(component_dims(G18, 6).cusp_bound == 8);
}
