#include "ellk/moments.hpp"

#include "ellk/lvalue.hpp"
#include "ellk/numerics.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace ellk {

namespace {

constexpr long kGuard = 24;

struct NodeData {
  Real K;       // K(m)
  Real Kc;      // K(1−m)
  Real X;
  Real factor;  // dm/dx divided by the weight denominator, up to the h(X) factor
};

NodeData node_data(Group g, const Abscissa& at, mpfr_prec_t wp) {
  NodeData d;
  const Real& x = at.x;
  switch (g) {
    case Group::Gamma1_4: {
      d.X = x;
      d.K = ellip_K_from_complement(at.to_b, wp);
      d.Kc = ellip_K_from_complement(x, wp);
      d.factor = Real(1, wp);
      break;
    }
    case Group::Gamma4: {
      d.X = x;
      Real x2 = x * x;
      Real m = x2 * x2;
      Real spread = (x + 1) * (x2 + 1);
      d.K = ellip_K_from_complement(at.to_b * spread, wp);
      d.Kc = ellip_K_from_complement(m, wp);
      d.factor = Real(4, wp) / spread;
      break;
    }
    case Group::Gamma1_8: {
      Real m = at.to_b * (x + 1);
      d.X = sqrt(x + 1);
      d.K = ellip_K_from_complement(x * x, wp);
      d.Kc = ellip_K_from_complement(m, wp);
      Real r2 = sqrt(Real(2, wp));
      d.factor = Real(2, wp) / ((x + 1) * (d.X + 1) * (d.X + r2));
      break;
    }
  }
  return d;
}

}  // namespace

long max_moment_index(const GroupTag& g, int k) {
  return g.label == Group::Gamma1_4 ? k / 2 - 2 : 2L * k - 2;
}

int bridge_orientation(const GroupTag& g) { return g.label == Group::Gamma1_8 ? -1 : 1; }

void MomentSpec::validate() const {
  if (k < 3) throw DomainError("moments need k ≥ 3");
  if (s < 1 || s > k - 1) throw DomainError("s must satisfy 1 ≤ s ≤ k−1");
  long top = max_moment_index(group, k);
  if (top < 0) throw DomainError("no moments on " + group.name() + " at weight " + std::to_string(k));
  if (i < 0 || i > top) throw DomainError("index i must satisfy 0 ≤ i ≤ " + std::to_string(top));
}

std::string MomentSpec::describe() const {
  return "M[" + group.name() + ",k=" + std::to_string(k) + ",s=" + std::to_string(s) + ",i=" + std::to_string(i) + "]";
}

nlohmann::json MomentSpec::to_json() const {
  return {{"gamma", group.name()}, {"k", k}, {"s", s}, {"i", i}};
}

std::vector<QuadratureResult> integrate_moments(const GroupTag& g, int k,
                                                const std::vector<std::pair<int, XPoly>>& items, Precision prec) {
  for (const auto& [s, h] : items)
    if (s < 1 || s > k - 1) throw DomainError("s must satisfy 1 ≤ s ≤ k−1");
  const mpfr_prec_t wp = prec.bits() + kGuard;
  auto f = [&](const Abscissa& at, std::vector<Real>& out) {
    NodeData d = node_data(g.label, at, wp);
    for (std::size_t j = 0; j < items.size(); ++j) {
      int s = items[j].first;
      out[j] = pow(d.K, k - s - 1) * pow(d.Kc, s - 1) * items[j].second.evaluate(d.X) * d.factor;
    }
  };
  QuadratureOptions options;
  options.max_singularity = 0.25;
  options.max_levels = 14;
  auto res = tanh_sinh_integrate(f, items.size(), Real(0, wp), Real(1, wp), prec, options);
  for (const auto& r : res)
    if (!r.converged) throw DomainError("moment quadrature did not converge");
  return res;
}

BigReal compute_moment(const MomentSpec& spec, Precision prec) {
  spec.validate();
  return integrate_moments(spec.group, spec.k, {{spec.s, XPoly::monomial(spec.i)}}, prec).front().value;
}

BigReal moment_via_lvalue(const MomentSpec& spec, Precision prec) {
  spec.validate();
  const GroupTag& g = spec.group;
  FormHandle f = p_inverse(g.vanishing_divisor() * XPoly::monomial(spec.i), spec.k, g);
  BigReal L = lvalue_via_qexp(f, spec.s, prec.plus_bits(8));
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real scale = two_pow(spec.k - 2, wp) * pow(Real::pi(wp), spec.s + 1 - spec.k) * bridge_orientation(g);
  BigReal v = L * gamma(mpq_class(spec.s), Precision::from_bits(wp)) / BigReal(scale);
  return BigReal(v.value().with_prec(prec.bits()), err_add(v.err(), ulp(v.value().with_prec(prec.bits()))));
}

const MomentFamily& moment_family(const GroupTag& g, int k, Precision prec) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, long>, MomentFamily> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(static_cast<int>(g.label), k, prec.bits());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  MomentFamily fam{g, k, {}, {}};
  std::vector<std::pair<int, XPoly>> items;
  for (int s = 1; s <= k - 1; ++s)
    for (long i = 0; i <= max_moment_index(g, k); ++i) {
      MomentSpec spec{g, k, s, i};
      spec.validate();
      fam.specs.push_back(spec);
      items.emplace_back(s, XPoly::monomial(i));
    }
  for (auto& r : integrate_moments(g, k, items, prec)) fam.values.push_back(r.value);
  return cache.emplace(key, std::move(fam)).first->second;
}

BigReal named_moment(int which, Precision prec) {
  if (which != 1 && which != 2) throw DomainError("named moments are x1 and x2");
  XPoly h({1, 1, 1, 1});
  if (which == 2) h = h * XPoly::monomial(1);
  return integrate_moments(GroupTag::of(Group::Gamma4), 4, {{1, h}}, prec).front().value;
}

std::string integrand_description(const MomentSpec& spec) {
  std::string out = "K(m)^" + std::to_string(spec.k - spec.s - 1) + " K(1-m)^" + std::to_string(spec.s - 1) +
                    " X^" + std::to_string(spec.i);
  WeightFunction w = moment_weight_function(spec.group);
  if (w.denominator.degree() > 0) out += " / (" + w.denominator.to_string() + ")";
  switch (spec.group.label) {
    case Group::Gamma1_4: out += " dm, X = m"; break;
    case Group::Gamma4: out += " dm, m = X^4"; break;
    case Group::Gamma1_8: out += " dm, m = X^2(2-X^2)"; break;
  }
  return out;
}

}  // namespace ellk
