#pragma once

#include "ellk/modular.hpp"
#include "ellk/quadrature.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace ellk {

// M(s, i) = ∫₀¹ K(m)^{k−s−1} K(1−m)^{s−1} X^i / w(X) dm on one of the groups,
// where X is the uniformizer attached to m and w the weight denominator.
struct MomentSpec {
  GroupTag group;
  int k;
  int s;
  long i;

  void validate() const;
  std::string describe() const;
  nlohmann::json to_json() const;
};

long max_moment_index(const GroupTag& g, int k);

// −1 when m runs backwards along the uniformizer interval (Γ₁(8): X from 1 to √2).
int bridge_orientation(const GroupTag& g);

// The integrals ∫K^{k−s−1}K'^{s−1}h(X)/w(X) dm for each (s, h), on one shared node set.
std::vector<QuadratureResult> integrate_moments(const GroupTag& g, int k,
                                                const std::vector<std::pair<int, XPoly>>& items, Precision prec);

BigReal compute_moment(const MomentSpec& spec, Precision prec);

// The same moment through L(p_inverse(divisor·X^i), s) and the Mellin route.
BigReal moment_via_lvalue(const MomentSpec& spec, Precision prec);

// All M(s, i), s = 1..k−1, i = 0..max_moment_index; row-major in (s, i). Cached per (group, k, bits).
struct MomentFamily {
  GroupTag group;
  int k;
  std::vector<MomentSpec> specs;
  std::vector<BigReal> values;
};
const MomentFamily& moment_family(const GroupTag& g, int k, Precision prec);

// x₁, x₂ on Γ(4) at weight 4: the s = 1 moments with h = 1+X+X²+X³ and X+X²+X³+X⁴.
BigReal named_moment(int which, Precision prec);

// Human-readable form of the integrand, e.g. "K(m)^3 K(1-m)^0 X^2 / (X^3+X^4+X^5+X^6) dm".
std::string integrand_description(const MomentSpec& spec);

}  // namespace ellk
