#pragma once

#include "ellk/verify.hpp"

#include <vector>

namespace ellk {

// Planted integer relations of height ≤ 10⁶ among random reals; one row with the success count.
CheckRow planted_pslq_recovery(int trials, long digits, unsigned long seed);
// Each special function at d and 2d digits must agree to the smaller precision.
std::vector<CheckRow> precision_doubling_rows(long digits);
// Theta identities and P-map round trips through the theta representation, to q-order `order`.
std::vector<CheckRow> modular_invariant_rows(long order);
// component_dims sums to dimension_bound for 3 ≤ k ≤ kmax.
std::vector<CheckRow> dimension_table_rows(int kmax);

}  // namespace ellk
