#pragma once

#include "ellk/qseries.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ellk {

// Polynomial in the uniformizer X with coefficients in ℚ(√2).
class XPoly {
 public:
  XPoly() = default;
  explicit XPoly(std::vector<Sqrt2Elem> coeffs);
  static XPoly monomial(long degree, const Sqrt2Elem& c = Sqrt2Elem(1));

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }  // −1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  const Sqrt2Elem& coeff(long i) const;
  const std::vector<Sqrt2Elem>& coefficients() const { return coeffs_; }
  bool is_rational() const;

  XPoly& operator+=(const XPoly& o);
  XPoly& operator-=(const XPoly& o);
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend XPoly operator*(XPoly a, const Sqrt2Elem& c);
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Quotient and remainder of division by a nonzero polynomial.
  std::pair<XPoly, XPoly> divmod(const XPoly& d) const;
  Real evaluate(const Real& x) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
  static XPoly from_json(const nlohmann::json& j);

 private:
  void trim();
  std::vector<Sqrt2Elem> coeffs_;
};

enum class Group { Gamma1_4, Gamma4, Gamma1_8 };

struct GroupTag {
  Group label;

  static GroupTag of(Group g) { return GroupTag{g}; }
  static GroupTag parse(const std::string& name);  // g1_4, g4, g1_8
  static std::vector<GroupTag> all();
  std::string name() const;
  bool over_sqrt2() const { return label == Group::Gamma1_8; }
  // X(1−X) or (X−1)(X−√2)
  XPoly vanishing_divisor() const;
  // spacing of the grid indices that can carry nonzero B₂-side coefficients
  long lattice_step() const { return label == Group::Gamma4 ? 1 : 4; }
  // Eisenstein level N and the inflation τ ↦ cτ that lands the group there
  long eisenstein_level() const;
  long inflation() const { return label == Group::Gamma4 ? 4 : 1; }
  friend bool operator==(const GroupTag& a, const GroupTag& b) { return a.label == b.label; }
};

long space_dimension(const GroupTag& g, int k);

struct ThetaFactor {
  int j;              // θ_j
  mpq_class scale;    // argument multiplier r in θ_j(rτ)
};

// Σ_i c_i·a^{n−i}·b^i with a, b theta factors, n = coeffs.size() − 1.
struct ThetaPolynomial {
  ThetaFactor a;
  ThetaFactor b;
  std::vector<Sqrt2Elem> coeffs;

  long total_degree() const { return static_cast<long>(coeffs.size()) - 1; }
  QSeries expansion(long order) const;
  // θ_j(r·it) = (rt)^{−1/2}θ_σ(j)(i/(rt)): the same polynomial in the variable
  // 1/t, without the overall factor t^{−n/2}.
  ThetaPolynomial jacobi_transform() const;
  // generator polynomial realizing (2K/π)^k g(X)
  static ThetaPolynomial from_xpoly(const GroupTag& g, const XPoly& p, int k);
};

struct EtaDescriptor {
  std::vector<std::pair<long, long>> factors;  // (multiplier, exponent)
};

struct EisensteinDescriptor {
  CharacterTag psi;
  CharacterTag phi;
  long t;
  std::string to_string() const;
  friend bool operator==(const EisensteinDescriptor& a, const EisensteinDescriptor& b) {
    return a.psi == b.psi && a.phi == b.phi && a.t == b.t;
  }
};

// Σ c_j E_k^{ψ_j,φ_j,t_j}(τ) at level N; the group form is this series at τ/inflation.
struct EisensteinCombination {
  std::vector<Sqrt2Elem> coeffs;
  std::vector<EisensteinDescriptor> terms;
  long level;
  long inflation;
};

struct CmDescriptor {
  int level;
};

using FormRepresentation =
    std::variant<ThetaPolynomial, EtaDescriptor, EisensteinCombination, CmDescriptor, XPoly>;

// A modular form with its B₂-side expansion, i.e. the series of f(τ/2). For CM
// forms of level 16 the handle holds f(τ/4), which lives on Γ(4).
class FormHandle {
 public:
  FormHandle(int weight, std::optional<GroupTag> group, FormRepresentation rep);

  static FormHandle from_xpoly(const GroupTag& g, const XPoly& p, int k);
  static FormHandle from_theta(const GroupTag& g, ThetaPolynomial p, int k);
  static FormHandle eta(std::vector<std::pair<long, long>> factors);
  static FormHandle cm(int level, int k);
  static FormHandle eisenstein(const GroupTag& g, int k, EisensteinCombination combo);

  // The same form regarded as an element of M_k(g).
  FormHandle with_group(const GroupTag& g) const;

  int weight() const { return weight_; }
  const std::optional<GroupTag>& group() const { return group_; }
  const FormRepresentation& representation() const { return rep_; }
  // B₂-side expansion truncated at grid index `order` (cached).
  QSeries expansion(long order) const;
  std::string describe() const;
  nlohmann::json to_json() const;

 private:
  QSeries compute_expansion(long order) const;
  struct Cache;
  int weight_;
  std::optional<GroupTag> group_;
  FormRepresentation rep_;
  std::shared_ptr<Cache> cache_;
};

// Exact series for (B₂f)(it): Σ_∞(t) for t ≥ 1 and prefactor·t^{t_power}·Σ_0(1/t)
// for t < 1, both evaluated as q-series in e^{−2π·(index/8)·(t or 1/t)}.
struct CuspExpansions {
  QSeries infinity;
  QSeries zero;
  Sqrt2Elem zero_prefactor;
  int zero_t_power;
};

CuspExpansions cusp_expansions(const FormHandle& f, long order);

std::vector<FormHandle> monomial_basis(const GroupTag& g, int k);
XPoly p_map(const FormHandle& f);
FormHandle p_inverse(const XPoly& p, int k, const GroupTag& g);

std::vector<XPoly> vanishing_subspace_basis(const GroupTag& g, int k);

// The integrand factor h ↦ h/denominator of the moment family.
struct WeightFunction {
  XPoly denominator;
};
WeightFunction moment_weight_function(const GroupTag& g);

struct EisensteinBasis {
  std::vector<EisensteinDescriptor> terms;
  long level;
  long inflation;
};
EisensteinBasis eisenstein_basis(const GroupTag& g, int k);

struct FrickeImage {
  Sqrt2Elem coefficient;
  EisensteinDescriptor target;
};
FrickeImage fricke_eisenstein(int k, const EisensteinDescriptor& e, long N);

// Constant term of E_k^{ψ,φ,t} at ∞.
mpq_class eisenstein_constant_term(int k, const EisensteinDescriptor& e);

std::vector<EisensteinCombination> eisenstein_vanishing_combination(const GroupTag& g, int k);

}  // namespace ellk
