#pragma once

#include "ellk/real.hpp"

#include <functional>
#include <vector>

namespace ellk {

// A quadrature node inside (a, b) with both endpoint distances computed without
// cancellation, so integrands can evaluate complementary quantities like 1 − m.
struct Abscissa {
  Real x;
  Real from_a;  // x − a
  Real to_b;    // b − x
};

struct QuadratureResult {
  BigReal value;
  int levels_used = 0;
  bool converged = false;
};

using Integrand = std::function<Real(const Abscissa&)>;
// Fills out[0..count) with the integrands of a family sharing one node set.
using VectorIntegrand = std::function<void(const Abscissa&, std::vector<Real>& out)>;
using LineIntegrand = std::function<void(const Real& u, std::vector<Real>& out)>;

struct QuadratureOptions {
  int max_levels = 12;
  // strongest algebraic endpoint singularity x^{−α} the node range must resolve
  double max_singularity = 0.75;
};

QuadratureResult tanh_sinh_integrate(const Integrand& f, const Real& a, const Real& b, Precision prec,
                                     int max_levels = 12);

std::vector<QuadratureResult> tanh_sinh_integrate(const VectorIntegrand& f, std::size_t count,
                                                  const Real& a, const Real& b, Precision prec,
                                                  const QuadratureOptions& options = {});

// ∫_ℝ g(u) du for integrands with doubly exponential decay in both directions,
// by trapezoidal sums with step halving. The node range is fixed on the coarsest
// level by walking outward until every component is negligible.
std::vector<QuadratureResult> trapezoid_real_line(const LineIntegrand& g, std::size_t count,
                                                  Precision prec, int max_levels = 12,
                                                  double initial_step = 0.5);

}  // namespace ellk
