#pragma once

#include "ellk/exact.hpp"
#include "ellk/modular.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ellk {

enum class Field { Rational, Sqrt2 };

enum class PslqStatus { Found, NoneFound, Inconclusive };

std::string to_string(PslqStatus s);

struct PslqOutcome {
  PslqStatus status = PslqStatus::NoneFound;
  std::vector<mpz_class> coeffs;  // valid when status == Found
  long iterations = 0;
};

// Integer relation search on values known to prec. Found relations have
// |Σc_j v_j| below 10^{−0.7·digits}·max|v_j| and max|c_j| ≤ max_height.
PslqOutcome pslq(const std::vector<Real>& values, Precision prec, const mpz_class& max_height);

// A relation Σ c_j v_j = 0 with coefficients in ℤ or ℤ[√2].
struct Relation {
  std::vector<Sqrt2Elem> coeffs;
  Real residual;            // |Σ c_j v_j| at discovery precision
  mpz_class height;         // max |a|, |b| over the coefficients
  long discovered_at_bits = 0;
  long certified_at_bits = 0;
  Real certified_residual;  // normalized residual at the certification precision
  bool certified = false;

  nlohmann::json to_json() const;
  std::string to_string() const;
};

// Produces the values of a set at a requested precision; used to re-evaluate
// for certification.
using ValueSource = std::function<std::vector<BigReal>(Precision)>;

struct RelationSearch {
  PslqStatus status = PslqStatus::NoneFound;
  std::optional<Relation> relation;
};

// PSLQ at prec (over ℤ or ℤ[√2]); candidates are certified at 1.5×prec.
RelationSearch find_relation(const ValueSource& values, Field field, Precision prec, const mpz_class& max_height);

// Interleaves (v, √2·v), runs pslq and folds the coefficient pairs.
PslqOutcome relation_over_sqrt2_raw(const std::vector<Real>& values, Precision prec, const mpz_class& max_height,
                                    std::vector<Sqrt2Elem>& folded);

// Checks Σc_j v_j at higher precision: residual normalized by max|c_j v_j|
// must be below 10^{−(digits−20)}.
bool certify(Relation& r, const std::vector<BigReal>& high_values, Precision high);

struct RankResult {
  long rank = 0;
  std::vector<Relation> relations;
  std::vector<std::size_t> basis;   // indices of the values kept as independent
  bool verified = true;             // false when a PSLQ step was inconclusive or uncertified
  std::string note;
};

RankResult numeric_rank(const ValueSource& values, Field field, Precision prec, const mpz_class& max_height);

struct Expression {
  std::vector<Sqrt2Elem> coeffs;  // target = Σ coeffs_j·basis_j
  Relation relation;
};

std::optional<Expression> express_in_basis(const ValueSource& target_then_basis, Field field, Precision prec,
                                           const mpz_class& max_height);

// Rational p/q with |p|,|q| ≤ max_height matching x, certified against a second
// evaluation at higher precision.
std::optional<mpq_class> recognize_rational(const BigReal& x, const BigReal& x_high, Precision prec,
                                            const mpz_class& max_height);

long dimension_bound(const GroupTag& g, int k);

struct ComponentDims {
  long eisenstein_constants;
  long cusp_bound;
};
ComponentDims component_dims(const GroupTag& g, int k);

}  // namespace ellk
