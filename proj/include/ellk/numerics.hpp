#pragma once

#include "ellk/real.hpp"

#include <vector>

namespace ellk {

// Exact Bernoulli numbers with B_1 = −1/2.
mpq_class bernoulli(unsigned n);
// Bernoulli polynomial B_n(x).
mpq_class bernoulli_poly(unsigned n, const mpq_class& x);
// Kronecker symbol (D|n) for the discriminants 1, −4, 8, −8.
int kronecker(int D, long n);

BigReal agm(const BigReal& a, const BigReal& b, Precision prec);
// Plain AGM on already-rounded inputs; result carries prec bits.
Real agm_raw(const Real& a, const Real& b, mpfr_prec_t prec);

BigReal ellip_K(const BigReal& m, Precision prec);
// K(m) given mc = 1 − m; stays accurate as m → 1.
Real ellip_K_from_complement(const Real& mc, mpfr_prec_t prec);

BigReal gamma(const BigReal& x, Precision prec);
BigReal gamma(const mpq_class& x, Precision prec);

BigReal zeta(long s, Precision prec);
// ζ(s, a) for integer s ≥ 2 and rational a > 0.
BigReal hurwitz_zeta(long s, const mpq_class& a, Precision prec);
BigReal dirichlet_L(int D, long s, Precision prec);

BigReal legendre_P(int n, const BigReal& x);

BigReal pfq_partial_sum(const std::vector<mpq_class>& numerators,
                        const std::vector<mpq_class>& denominators, const BigReal& z, long N,
                        Precision prec);

}  // namespace ellk
