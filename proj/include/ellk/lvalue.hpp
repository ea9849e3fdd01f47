#pragma once

#include "ellk/modular.hpp"
#include "ellk/numerics.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ellk {

// θ_j(i·y) for y > 0; small y goes through the Jacobi imaginary transformation.
BigReal theta_value(int j, const Real& y, Precision prec);
// η(i·y) for y > 0, with η(i/u) = √u·η(iu) for small y.
BigReal eta_value(const Real& y, Precision prec);

// m = θ₂⁴/θ₃⁴ at τ = it, and its inverse t = K(1−m)/K(m).
BigReal m_of_t(const Real& t, Precision prec);
BigReal t_of_m(const Real& m, Precision prec);

// Numerical evaluator of (B₂f)(it) = f(it/2) for t > 0.
class FormEvaluator {
 public:
  FormEvaluator(const FormHandle& f, Precision prec);
  ~FormEvaluator();
  FormEvaluator(FormEvaluator&&) noexcept;
  FormEvaluator& operator=(FormEvaluator&&) noexcept;

  // Value at working precision; the result carries working_bits() bits.
  Real operator()(const Real& t) const;
  mpfr_prec_t working_bits() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

BigReal eval_form(const FormHandle& f, const Real& t, Precision prec);

// L(f,s) = π^s/Γ(s)·∫₀^∞ (B₂f)(ix)x^{s−1}dx for each requested s.
std::vector<BigReal> lvalue_via_qexp(const FormHandle& f, const std::vector<int>& s_values, Precision prec);
BigReal lvalue_via_qexp(const FormHandle& f, int s, Precision prec);

// L(p_inverse(g), s) from the moment integral; g must be divisible by the vanishing divisor.
BigReal lvalue_via_moment(const XPoly& g, int k, int s, const GroupTag& group, Precision prec);

BigReal omega(int D, Precision prec);                  // Ω₋₄ or Ω₋₈
BigReal omega_chowla_selberg(int D, Precision prec);   // same numbers from the Γ-product

struct ClosedConstant {
  enum class Kind { PiPower, Zeta, DirichletL, OmegaPeriod };
  Kind kind;
  int k;
  int D;  // discriminant for DirichletL and OmegaPeriod
  std::string label;
  BigReal value;
};

std::vector<ClosedConstant> closed_constants(const GroupTag& g, int k, Precision prec);

struct CmCheck {
  int level;
  int k;
  int s;
  int D;
  BigReal lvalue;   // L(f,s) of the newform itself
  BigReal ratio;    // L(f,s)/(π^s|D|^{(s−1)/2}Ω_D^{k−1})
  std::optional<mpq_class> rational;
  std::optional<mpq_class> sqrt2_multiple;  // ratio = q·√2, tried only when no rational matches
  bool zero = false;
  std::string residual;
};

CmCheck cm_lvalue_check(int level, int k, int s, Precision prec);

}  // namespace ellk
