#pragma once

#include "ellk/exact.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace ellk {

// Truncated q-expansion on the exponent grid (1/8)ℤ≥0. Index n stands for q^{n/8};
// order is the first unknown index.
class QSeries {
 public:
  static constexpr long kGrid = 8;

  explicit QSeries(long order = 0);
  static QSeries constant(const Sqrt2Elem& c, long order);

  long order() const { return static_cast<long>(coeffs_.size()); }
  const Sqrt2Elem& operator[](long index) const;
  void set(long index, Sqrt2Elem value);
  void add_at(long index, const Sqrt2Elem& value);
  // Smallest index with a nonzero coefficient, or order() when none is known.
  long valuation() const;
  bool is_zero() const { return valuation() == order(); }
  bool is_rational() const;
  std::vector<long> support() const;

  QSeries truncated(long order) const;
  // f(τ) ↦ f(c·τ): index n moves to c·n, which must stay on the grid.
  QSeries rescaled(const mpq_class& c) const;
  // index shift by multiplying with q^{shift/8}
  QSeries shifted(long shift) const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const Sqrt2Elem& c);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const Sqrt2Elem& c) { return a *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const;
  // Integer power; negative exponents need a nonzero constant term.
  QSeries pow(long n) const;
  QSeries inverse() const;

  // Coefficients of the two series agree below the smaller order.
  bool agrees_with(const QSeries& o) const;

  nlohmann::json to_json() const;
  static QSeries from_json(const nlohmann::json& j);
  std::string to_string(long max_terms = 12) const;

 private:
  std::vector<Sqrt2Elem> coeffs_;
};

// Grid index of the q-power n.
constexpr long grid_index(long q_power) { return q_power * QSeries::kGrid; }

QSeries theta_series(int j, const mpq_class& scale, long order);
QSeries eta_product(const std::vector<std::pair<long, long>>& factors, long order);
QSeries eisenstein_qexp(int k, const CharacterTag& psi, const CharacterTag& phi, long t, long order);
// Exact integer coefficients a_n, n = 0..count−1, of E_k^{ψ,φ} (t = 1).
std::vector<mpq_class> eisenstein_coefficients(int k, const CharacterTag& psi, const CharacterTag& phi, long count);
QSeries cm_form_qexp(int level, int k, long order);

}  // namespace ellk
