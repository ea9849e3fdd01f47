#pragma once

#include "ellk/real.hpp"

#include <gmpxx.h>

#include <vector>

namespace ellk {

// ∫₀¹ K(x)K(1−x)P_n(2x−1)dx by quadrature, and its closed form
// (0 for odd n, (π/8)Γ(1/2+n/2)⁴/Γ(1+n/2)⁴ for even n).
struct FlCoefficient {
  int n;
  BigReal quadrature;
  BigReal closed_form;
  Real diff;
};
FlCoefficient fl_coefficient(int n, Precision prec);

// Limit of partial sums S(N) by polynomial extrapolation in 1/N.
struct Extrapolated {
  BigReal value;
  Real last_partial_sum;
  long terms = 0;
};
// Σ_{n<N}(4n+1)((π/8)Γ(1/2+n)⁴/Γ(1+n)⁴)² against ∫₀¹K(x)²K(1−x)²dx.
struct ParsevalCheck {
  Extrapolated series;
  BigReal quadrature;
  Real diff;
};
ParsevalCheck parseval_check(long N_terms, Precision prec);

// (π⁶/1024)·₉F₈(1/2,…,1/2,5/4; 1,…,1,1/4; 1), accelerated the same way.
Extrapolated hypergeometric_lvalue(long N_terms, Precision prec);

struct ModPPower {
  long p;
  mpz_class residue;  // in [0, p⁶)
};

struct SupercongruenceResult {
  long p;
  ModPPower lhs;
  ModPPower rhs;
  bool holds;
  bool holds_mod_p;
  mpz_class a_p;
};

// Σ_{n<p}((1/2)_n/n!)⁸(1+4n) versus p·a_p(η(2τ)¹²) modulo p⁶, in exact arithmetic.
SupercongruenceResult supercongruence_check(long p);

// a_n of η(2τ)¹² = q − 12q³ + …
mpz_class eta2_12_coefficient(long n);

}  // namespace ellk
