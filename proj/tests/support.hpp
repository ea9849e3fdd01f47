#pragma once

#include "ellk/real.hpp"

#include <algorithm>
#include <string>

namespace ellk_test {

inline ellk::Precision digits(long d) { return ellk::Precision::from_digits(d); }

// |a − b| ≤ 10^{−d}·max(1, |b|)
inline bool agree(const ellk::Real& a, const ellk::Real& b, double d) {
  ellk::Real diff = ellk::abs(a - b);
  if (diff.is_zero()) return true;
  double scale = std::max(0.0, ellk::abs(b).log10_abs());
  return diff.log10_abs() <= scale - d;
}
inline bool agree(const ellk::BigReal& a, const ellk::Real& b, double d) { return agree(a.value(), b, d); }
inline bool agree(const ellk::BigReal& a, const ellk::BigReal& b, double d) { return agree(a.value(), b.value(), d); }

inline ellk::Real num(const std::string& text, ellk::Precision p) {
  return ellk::Real::from_string(text, p.bits());
}

}  // namespace ellk_test
