#include "ellk/quadrature.hpp"

#include "ellk/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace ellk {

namespace {

constexpr long kGuard = 32;
constexpr std::size_t kChunk = 32;

struct Accumulator {
  std::vector<Real> sum;
  std::vector<Real> l1;
  Accumulator(std::size_t count, mpfr_prec_t prec) : sum(count, Real(prec)), l1(count, Real(prec)) {}
  void add(const Accumulator& o) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += o.sum[i];
      l1[i] += o.l1[i];
    }
  }
};

void check_finite(const Real& v) {
  if (!v.is_finite()) throw DomainError("quadrature integrand returned a non-finite value");
}

// Tanh-sinh node t mapped into (a, b), with its weight dx/dt.
struct Node {
  Abscissa at;
  Real weight;
};

Node tanh_sinh_node(const Real& t, const Real& a, const Real& width, const Real& b, mpfr_prec_t wp) {
  Real pi = Real::pi(wp);
  Real u = sinh(t) * pi;
  u.mul_2exp(-1);
  Real e = exp(abs(u) * -2);
  Real one_e = e + 1;
  Real small = width * e / one_e;
  Real large = width / one_e;
  Node n{{Real(wp), Real(wp), Real(wp)}, Real(wp)};
  if (t.sign() >= 0) {
    n.at.to_b = small;
    n.at.from_a = large;
    n.at.x = b - small;
  } else {
    n.at.from_a = small;
    n.at.to_b = large;
    n.at.x = a + small;
  }
  n.weight = width * pi * cosh(t) * e / (one_e * one_e);
  return n;
}

std::vector<QuadratureResult> finish(const std::vector<Real>& current, const std::vector<Real>& previous,
                                     const std::vector<Real>& l1, std::size_t nodes, Precision prec,
                                     int level, bool converged) {
  std::vector<QuadratureResult> out;
  out.reserve(current.size());
  for (std::size_t i = 0; i < current.size(); ++i) {
    Real v = current[i].with_prec(prec.bits());
    Real e = err_from(current[i] - previous[i]);
    e = err_add(e, err_mul(ulp(l1[i]), Real(static_cast<long>(nodes) + 16, BigReal::kRadiusPrec)));
    e = err_add(e, ulp(v));
    out.push_back({BigReal(std::move(v), std::move(e)), level, converged});
  }
  return out;
}

bool agree(const std::vector<Real>& current, const std::vector<Real>& previous, const std::vector<Real>& l1,
           Precision prec) {
  for (std::size_t i = 0; i < current.size(); ++i) {
    Real scale = l1[i];
    if (scale.is_zero()) continue;
    Real tol = scale * two_pow(-prec.bits(), 64);
    if (abs(current[i] - previous[i]) > tol) return false;
  }
  return true;
}

}  // namespace

std::vector<QuadratureResult> tanh_sinh_integrate(const VectorIntegrand& f, std::size_t count, const Real& a,
                                                  const Real& b, Precision prec, const QuadratureOptions& options) {
  if (!(a < b)) throw DomainError("tanh_sinh_integrate requires a < b");
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real aw = a.with_prec(wp), bw = b.with_prec(wp);
  Real width = bw - aw;
  double alpha = std::clamp(options.max_singularity, 0.0, 0.95);
  double t_max = std::asinh(wp * std::log(2.0) / (M_PI * (1.0 - alpha)));

  std::vector<Real> total(count, Real(wp)), l1(count, Real(wp)), previous(count, Real(wp));
  std::size_t nodes_used = 0;

  for (int level = 0; level <= options.max_levels; ++level) {
    long scale = 1L << level;
    long jmax = static_cast<long>(std::floor(t_max * scale));
    std::vector<long> indices;
    for (long j = -jmax; j <= jmax; ++j) {
      if (level > 0 && j % 2 == 0) continue;
      indices.push_back(j);
    }
    std::size_t chunks = (indices.size() + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(chunks, Accumulator(count, wp));
    parallel_for(chunks, [&](std::size_t c) {
      std::vector<Real> values(count, Real(wp));
      std::size_t end = std::min(indices.size(), (c + 1) * kChunk);
      for (std::size_t idx = c * kChunk; idx < end; ++idx) {
        Real t(indices[idx], wp);
        t.mul_2exp(-level);
        Node node = tanh_sinh_node(t, aw, width, bw, wp);
        f(node.at, values);
        for (std::size_t i = 0; i < count; ++i) {
          Real term = values[i] * node.weight;
          check_finite(term);
          partial[c].sum[i] += term;
          partial[c].l1[i] += abs(term);
        }
      }
    });
    Accumulator level_sum(count, wp);
    for (const auto& p : partial) level_sum.add(p);
    nodes_used += indices.size();

    previous = total;
    Real h = two_pow(-level, wp);
    for (std::size_t i = 0; i < count; ++i) {
      // S_ℓ = S_{ℓ−1}/2 + h·Σ_new
      total[i].mul_2exp(-1);
      total[i] += level_sum.sum[i] * h;
      l1[i].mul_2exp(-1);
      l1[i] += level_sum.l1[i] * h;
    }
    if (level == 0) {
      total.assign(count, Real(wp));
      l1.assign(count, Real(wp));
      for (std::size_t i = 0; i < count; ++i) {
        total[i] = level_sum.sum[i];
        l1[i] = level_sum.l1[i];
      }
      continue;
    }
    if (level >= 2 && agree(total, previous, l1, prec))
      return finish(total, previous, l1, nodes_used, prec, level, true);
  }
  return finish(total, previous, l1, nodes_used, prec, options.max_levels, false);
}

QuadratureResult tanh_sinh_integrate(const Integrand& f, const Real& a, const Real& b, Precision prec,
                                     int max_levels) {
  QuadratureOptions options;
  options.max_levels = max_levels;
  auto results = tanh_sinh_integrate(
      [&f](const Abscissa& x, std::vector<Real>& out) { out[0] = f(x); }, 1, a, b, prec, options);
  return results.front();
}

std::vector<QuadratureResult> trapezoid_real_line(const LineIntegrand& g, std::size_t count, Precision prec,
                                                  int max_levels, double initial_step) {
  mpfr_prec_t wp = prec.bits() + kGuard;
  Real h0 = Real::from_double(initial_step, wp);
  Real eps = two_pow(-static_cast<long>(wp), 64);

  std::vector<Real> total(count, Real(wp)), l1(count, Real(wp)), previous(count, Real(wp));
  std::vector<Real> values(count, Real(wp));
  auto add_node = [&](long j) {
    Real u = h0 * j;
    g(u, values);
    bool negligible = true;
    for (std::size_t i = 0; i < count; ++i) {
      check_finite(values[i]);
      total[i] += values[i];
      Real mag = abs(values[i]);
      l1[i] += mag;
      if (mag > eps * l1[i]) negligible = false;
    }
    return negligible;
  };

  // coarsest level: walk outward until four consecutive nodes are negligible
  constexpr long kWalkLimit = 4000;
  long j_hi = 0, j_lo = 0;
  add_node(0);
  for (int quiet = 0; quiet < 4 && j_hi < kWalkLimit;) quiet = add_node(++j_hi) ? quiet + 1 : 0;
  for (int quiet = 0; quiet < 4 && -j_lo < kWalkLimit;) quiet = add_node(--j_lo) ? quiet + 1 : 0;
  if (j_hi >= kWalkLimit || -j_lo >= kWalkLimit) throw DomainError("trapezoid_real_line: integrand does not decay");
  for (std::size_t i = 0; i < count; ++i) {
    total[i] *= h0;
    l1[i] *= h0;
  }
  std::size_t nodes_used = static_cast<std::size_t>(j_hi - j_lo + 1);

  for (int level = 1; level <= max_levels; ++level) {
    long scale = 1L << level;
    std::vector<long> indices;
    for (long j = j_lo * scale + 1; j < j_hi * scale; j += 2) indices.push_back(j);
    std::size_t chunks = (indices.size() + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(chunks, Accumulator(count, wp));
    parallel_for(chunks, [&](std::size_t c) {
      std::vector<Real> vals(count, Real(wp));
      std::size_t end = std::min(indices.size(), (c + 1) * kChunk);
      for (std::size_t idx = c * kChunk; idx < end; ++idx) {
        Real u = h0 * indices[idx];
        u.mul_2exp(-level);
        g(u, vals);
        for (std::size_t i = 0; i < count; ++i) {
          check_finite(vals[i]);
          partial[c].sum[i] += vals[i];
          partial[c].l1[i] += abs(vals[i]);
        }
      }
    });
    Accumulator level_sum(count, wp);
    for (const auto& p : partial) level_sum.add(p);
    nodes_used += indices.size();
    previous = total;
    Real h = h0;
    h.mul_2exp(-level);
    for (std::size_t i = 0; i < count; ++i) {
      total[i].mul_2exp(-1);
      total[i] += level_sum.sum[i] * h;
      l1[i].mul_2exp(-1);
      l1[i] += level_sum.l1[i] * h;
    }
    if (level >= 2 && agree(total, previous, l1, prec))
      return finish(total, previous, l1, nodes_used, prec, level, true);
  }
  return finish(total, previous, l1, nodes_used, prec, max_levels, false);
}

}  // namespace ellk
