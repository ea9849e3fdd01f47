#include "ellk/modular.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace ellk {

namespace {

const Sqrt2Elem& zero_elem() {
  static const Sqrt2Elem z;
  return z;
}

// e with r = 2^e, for the power-of-two scales used by theta arguments
long log2_exact(const mpq_class& r) {
  mpz_class num = r.get_num(), den = r.get_den();
  if (sgn(num) <= 0) throw DomainError("scale must be positive");
  auto bits = [](const mpz_class& z) {
    long e = static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
    if (mpz_sizeinbase(z.get_mpz_t(), 2) != static_cast<std::size_t>(e) + 1)
      throw DomainError("scale is not a power of two");
    return e;
  };
  return bits(num) - bits(den);
}

mpz_class ipow(long base, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

// ---------------------------------------------------------------- XPoly

XPoly::XPoly(std::vector<Sqrt2Elem> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

XPoly XPoly::monomial(long degree, const Sqrt2Elem& c) {
  if (degree < 0) throw DomainError("negative degree");
  std::vector<Sqrt2Elem> v(degree + 1);
  v[degree] = c;
  return XPoly(std::move(v));
}

void XPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Sqrt2Elem& XPoly::coeff(long i) const {
  if (i < 0 || i > degree()) return zero_elem();
  return coeffs_[i];
}

bool XPoly::is_rational() const {
  for (const auto& c : coeffs_)
    if (!c.is_rational()) return false;
  return true;
}

XPoly& XPoly::operator+=(const XPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

XPoly& XPoly::operator-=(const XPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  if (a.is_zero() || b.is_zero()) return XPoly();
  std::vector<Sqrt2Elem> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return XPoly(std::move(r));
}

XPoly operator*(XPoly a, const Sqrt2Elem& c) {
  for (auto& x : a.coeffs_) x *= c;
  a.trim();
  return a;
}

std::pair<XPoly, XPoly> XPoly::divmod(const XPoly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Sqrt2Elem> rem = coeffs_;
  long dd = d.degree();
  if (degree() < dd) return {XPoly(), *this};
  std::vector<Sqrt2Elem> quo(degree() - dd + 1);
  Sqrt2Elem lead_inv = d.coeffs_.back().inverse();
  for (long i = degree() - dd; i >= 0; --i) {
    Sqrt2Elem c = rem[i + dd] * lead_inv;
    quo[i] = c;
    if (c.is_zero()) continue;
    for (long j = 0; j <= dd; ++j) rem[i + j] -= c * d.coeffs_[j];
  }
  return {XPoly(std::move(quo)), XPoly(std::move(rem))};
}

Real XPoly::evaluate(const Real& x) const {
  Real acc(0, x.prec());
  for (long i = degree(); i >= 0; --i) {
    acc *= x;
    acc += coeffs_[i].to_real(x.prec());
  }
  return acc;
}

std::string XPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long i = 0; i <= degree(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coeffs_[i].to_string() << ")";
    if (i == 1) out << "*X";
    if (i > 1) out << "*X^" << i;
  }
  return out.str();
}

nlohmann::json XPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : coeffs_) arr.push_back({c.a().get_str(), c.b().get_str()});
  return arr;
}

XPoly XPoly::from_json(const nlohmann::json& j) {
  std::vector<Sqrt2Elem> v;
  for (const auto& e : j) {
    mpq_class a(e.at(0).get<std::string>()), b(e.at(1).get<std::string>());
    a.canonicalize();
    b.canonicalize();
    v.emplace_back(a, b);
  }
  return XPoly(std::move(v));
}

// ---------------------------------------------------------------- groups

GroupTag GroupTag::parse(const std::string& name) {
  if (name == "g1_4") return of(Group::Gamma1_4);
  if (name == "g4") return of(Group::Gamma4);
  if (name == "g1_8") return of(Group::Gamma1_8);
  throw DomainError("unknown group tag '" + name + "' (expected g1_4, g4 or g1_8)");
}

std::vector<GroupTag> GroupTag::all() {
  return {of(Group::Gamma1_4), of(Group::Gamma4), of(Group::Gamma1_8)};
}

std::string GroupTag::name() const {
  switch (label) {
    case Group::Gamma1_4: return "g1_4";
    case Group::Gamma4: return "g4";
    case Group::Gamma1_8: return "g1_8";
  }
  return "?";
}

XPoly GroupTag::vanishing_divisor() const {
  if (label == Group::Gamma1_8) return XPoly({Sqrt2Elem::sqrt2(), Sqrt2Elem(-1, -1), Sqrt2Elem(1)});
  return XPoly({Sqrt2Elem(0), Sqrt2Elem(1), Sqrt2Elem(-1)});
}

long GroupTag::eisenstein_level() const {
  switch (label) {
    case Group::Gamma1_4: return 4;
    case Group::Gamma4: return 16;
    case Group::Gamma1_8: return 8;
  }
  return 0;
}

long space_dimension(const GroupTag& g, int k) {
  if (k < 1) throw DomainError("weight must be positive");
  return g.label == Group::Gamma1_4 ? k / 2 + 1 : 2L * k + 1;
}

// ---------------------------------------------------------------- theta polynomials

QSeries ThetaPolynomial::expansion(long order) const {
  long n = total_degree();
  if (n < 0) return QSeries(order);
  QSeries ta = theta_series(a.j, a.scale, order);
  QSeries tb = theta_series(b.j, b.scale, order);
  std::vector<QSeries> apow;
  apow.reserve(n + 1);
  apow.push_back(QSeries::constant(Sqrt2Elem(1), order));
  for (long e = 1; e <= n; ++e) apow.push_back(apow.back() * ta);
  // P_i = c_i a^{n−i} + b·P_{i+1}
  QSeries acc = apow[0] * coeffs[n];
  for (long i = n - 1; i >= 0; --i) {
    acc = acc * tb;
    if (!coeffs[i].is_zero()) acc += apow[n - i] * coeffs[i];
  }
  return acc.truncated(order);
}

ThetaPolynomial ThetaPolynomial::jacobi_transform() const {
  auto swap_j = [](int j) { return j == 2 ? 4 : (j == 4 ? 2 : 3); };
  ThetaPolynomial out{{swap_j(a.j), 1 / a.scale}, {swap_j(b.j), 1 / b.scale}, coeffs};
  out.a.scale.canonicalize();
  out.b.scale.canonicalize();
  long ea = log2_exact(a.scale), eb = log2_exact(b.scale);
  long n = total_degree();
  for (long i = 0; i <= n; ++i)
    if (!out.coeffs[i].is_zero()) out.coeffs[i] *= Sqrt2Elem::sqrt2_pow(-ea * (n - i) - eb * i);
  return out;
}

ThetaPolynomial ThetaPolynomial::from_xpoly(const GroupTag& g, const XPoly& p, int k) {
  long dim = space_dimension(g, k);
  if (p.degree() > dim - 1)
    throw DomainError("polynomial degree " + std::to_string(p.degree()) + " exceeds dim M_k − 1 = " +
                      std::to_string(dim - 1));
  ThetaPolynomial out;
  out.coeffs.assign(2 * k + 1, Sqrt2Elem());
  switch (g.label) {
    case Group::Gamma1_4:
      out.a = {3, 1};
      out.b = {2, 1};
      for (long i = 0; i <= p.degree(); ++i) out.coeffs[4 * i] = p.coeff(i);
      break;
    case Group::Gamma4:
      out.a = {3, 1};
      out.b = {2, 1};
      for (long i = 0; i <= p.degree(); ++i) out.coeffs[i] = p.coeff(i);
      break;
    case Group::Gamma1_8:
      out.a = {3, 1};
      out.b = {3, 2};
      for (long i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) out.coeffs[i] = p.coeff(i) * Sqrt2Elem::sqrt2_pow(i);
      break;
  }
  return out;
}

// ---------------------------------------------------------------- Eisenstein

std::string EisensteinDescriptor::to_string() const {
  return "E[" + psi.name() + "," + phi.name() + "," + std::to_string(t) + "]";
}

mpq_class eisenstein_constant_term(int k, const EisensteinDescriptor& e) {
  if (e.psi.label != Character::Trivial) return 0;
  return l_value_at_negative(static_cast<unsigned>(k), e.phi) / 2;
}

EisensteinBasis eisenstein_basis(const GroupTag& g, int k) {
  if (k < 3) throw DomainError("Eisenstein bases need k ≥ 3");
  const CharacterTag one = CharacterTag::of(Character::Trivial);
  const CharacterTag m4 = CharacterTag::of(Character::ChiM4);
  const CharacterTag p8 = CharacterTag::of(Character::Chi8);
  const CharacterTag m8 = CharacterTag::of(Character::ChiM8);
  EisensteinBasis b{{}, g.eisenstein_level(), g.inflation()};
  bool even = k % 2 == 0;
  switch (g.label) {
    case Group::Gamma1_4:
      if (even)
        for (long t : {1, 2, 4}) b.terms.push_back({one, one, t});
      break;
    case Group::Gamma4:
      if (even) {
        for (long t : {1, 2, 4, 8, 16}) b.terms.push_back({one, one, t});
        b.terms.push_back({m4, m4, 1});
      } else {
        for (long t : {1, 2, 4}) b.terms.push_back({m4, one, t});
        for (long t : {1, 2, 4}) b.terms.push_back({one, m4, t});
      }
      break;
    case Group::Gamma1_8:
      if (even) {
        for (long t : {1, 2, 4, 8}) b.terms.push_back({one, one, t});
        b.terms.push_back({one, p8, 1});
        b.terms.push_back({p8, one, 1});
      } else {
        for (long t : {1, 2}) b.terms.push_back({m4, one, t});
        for (long t : {1, 2}) b.terms.push_back({one, m4, t});
        b.terms.push_back({one, m8, 1});
        b.terms.push_back({m8, one, 1});
      }
      break;
  }
  return b;
}

FrickeImage fricke_eisenstein(int k, const EisensteinDescriptor& e, long N) {
  long u = e.psi.conductor, v = e.phi.conductor;
  if (e.t <= 0 || N % (e.t * u * v) != 0) throw DomainError("fricke_eisenstein: t·u·v must divide N");
  if ((e.psi.odd != e.phi.odd) != (k % 2 == 1)) throw DomainError("character parity does not match the weight");
  long odd_count = (e.psi.odd ? 1 : 0) + (e.phi.odd ? 1 : 0);
  // i^{−k}·g(ψ)g(φ)/√(uv) = i^{odd_count − k}
  long quarter = odd_count - k;
  int unit = ((quarter / 2) % 2 == 0) ? 1 : -1;
  Sqrt2Elem c = Sqrt2Elem::sqrt2_pow(log2_exact(mpq_class(u)) - log2_exact(mpq_class(v)));
  c *= Sqrt2Elem::sqrt2_pow(k * log2_exact(mpq_class(N)));
  c *= Sqrt2Elem(mpq_class(1, ipow(u * e.t, k)));
  c *= Sqrt2Elem(unit);
  return {c, {e.phi, e.psi, N / (u * v * e.t)}};
}

std::vector<EisensteinCombination> eisenstein_vanishing_combination(const GroupTag& g, int k) {
  EisensteinBasis basis = eisenstein_basis(g, k);
  std::size_t n = basis.terms.size();
  if (n == 0) return {};
  Sqrt2Matrix A(2, std::vector<Sqrt2Elem>(n));
  for (std::size_t j = 0; j < n; ++j) {
    A[0][j] = eisenstein_constant_term(k, basis.terms[j]);
    FrickeImage w = fricke_eisenstein(k, basis.terms[j], basis.level);
    A[1][j] = w.coefficient * Sqrt2Elem(eisenstein_constant_term(k, w.target));
  }
  std::vector<EisensteinCombination> out;
  for (auto& v : nullspace_exact(A, n)) out.push_back({std::move(v), basis.terms, basis.level, basis.inflation});
  return out;
}

// ---------------------------------------------------------------- form handles

struct FormHandle::Cache {
  std::mutex mutex;
  std::optional<QSeries> series;
};

FormHandle::FormHandle(int weight, std::optional<GroupTag> group, FormRepresentation rep)
    : weight_(weight), group_(group), rep_(std::move(rep)), cache_(std::make_shared<Cache>()) {
  if (weight < 1) throw DomainError("weight must be positive");
}

FormHandle FormHandle::from_xpoly(const GroupTag& g, const XPoly& p, int k) {
  if (p.degree() > space_dimension(g, k) - 1) throw DomainError("polynomial degree exceeds dim M_k − 1");
  return FormHandle(k, g, p);
}

FormHandle FormHandle::from_theta(const GroupTag& g, ThetaPolynomial p, int k) {
  if (p.total_degree() != 2L * k) throw DomainError("theta polynomial must be homogeneous of degree 2k");
  return FormHandle(k, g, std::move(p));
}

FormHandle FormHandle::eta(std::vector<std::pair<long, long>> factors) {
  long sum = 0;
  for (auto [m, e] : factors) sum += e;
  if (sum <= 0 || sum % 2 != 0) throw DomainError("eta product weight must be a positive integer");
  return FormHandle(static_cast<int>(sum / 2), std::nullopt, EtaDescriptor{std::move(factors)});
}

FormHandle FormHandle::cm(int level, int k) {
  cm_form_qexp(level, k, 1);  // validates the parameters
  std::optional<GroupTag> g;
  if (level == 4) g = GroupTag::of(Group::Gamma1_4);
  if (level == 8) g = GroupTag::of(Group::Gamma1_8);
  if (level == 16) g = GroupTag::of(Group::Gamma4);
  return FormHandle(k, g, CmDescriptor{level});
}

FormHandle FormHandle::eisenstein(const GroupTag& g, int k, EisensteinCombination combo) {
  if (combo.coeffs.size() != combo.terms.size()) throw DomainError("coefficient/term count mismatch");
  for (const auto& e : combo.terms)
    if ((e.psi.odd != e.phi.odd) != (k % 2 == 1)) throw DomainError("character parity does not match the weight");
  return FormHandle(k, g, std::move(combo));
}

FormHandle FormHandle::with_group(const GroupTag& g) const {
  FormHandle out(*this);
  out.group_ = g;
  return out;
}

QSeries FormHandle::compute_expansion(long order) const {
  struct Visitor {
    const FormHandle& self;
    long order;
    QSeries operator()(const ThetaPolynomial& p) const { return p.expansion(order); }
    QSeries operator()(const XPoly& p) const {
      return ThetaPolynomial::from_xpoly(*self.group_, p, self.weight_).expansion(order);
    }
    QSeries operator()(const EtaDescriptor& e) const {
      return eta_product(e.factors, 2 * order).rescaled(mpq_class(1, 2)).truncated(order);
    }
    QSeries operator()(const CmDescriptor& c) const {
      long shrink = c.level == 16 ? 8 : 2;
      return cm_form_qexp(c.level, self.weight_, shrink * order).rescaled(mpq_class(1, shrink)).truncated(order);
    }
    QSeries operator()(const EisensteinCombination& c) const {
      long shrink = 2 * c.inflation;
      QSeries acc(shrink * order);
      for (std::size_t j = 0; j < c.terms.size(); ++j) {
        if (c.coeffs[j].is_zero()) continue;
        const auto& e = c.terms[j];
        acc += eisenstein_qexp(self.weight_, e.psi, e.phi, e.t, shrink * order) * c.coeffs[j];
      }
      return acc.rescaled(mpq_class(1, shrink)).truncated(order);
    }
  };
  return std::visit(Visitor{*this, order}, rep_);
}

QSeries FormHandle::expansion(long order) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->series || cache_->series->order() < order) cache_->series = compute_expansion(order);
  return cache_->series->truncated(order);
}

std::string FormHandle::describe() const {
  std::ostringstream out;
  out << "weight " << weight_;
  if (group_) out << " on " << group_->name();
  out << ": ";
  struct Visitor {
    std::ostringstream& out;
    void operator()(const ThetaPolynomial& p) const {
      out << "theta polynomial of degree " << p.total_degree() << " in theta" << p.a.j << "(" << p.a.scale.get_str()
          << "t), theta" << p.b.j << "(" << p.b.scale.get_str() << "t)";
    }
    void operator()(const XPoly& p) const { out << "P-image " << p.to_string(); }
    void operator()(const EtaDescriptor& e) const {
      out << "eta product";
      for (auto [m, x] : e.factors) out << " eta(" << m << "t)^" << x;
    }
    void operator()(const CmDescriptor& c) const { out << "CM newform of level " << c.level; }
    void operator()(const EisensteinCombination& c) const {
      out << "Eisenstein combination at level " << c.level;
      for (std::size_t j = 0; j < c.terms.size(); ++j)
        if (!c.coeffs[j].is_zero()) out << " + (" << c.coeffs[j].to_string() << ")" << c.terms[j].to_string();
    }
  };
  std::visit(Visitor{out}, rep_);
  return out.str();
}

nlohmann::json FormHandle::to_json() const {
  nlohmann::json j;
  j["weight"] = weight_;
  j["group"] = group_ ? nlohmann::json(group_->name()) : nlohmann::json(nullptr);
  struct Visitor {
    nlohmann::json& j;
    void operator()(const ThetaPolynomial& p) const {
      j["kind"] = "theta";
      j["a"] = {p.a.j, p.a.scale.get_str()};
      j["b"] = {p.b.j, p.b.scale.get_str()};
      j["coeffs"] = XPoly(p.coeffs).to_json();
    }
    void operator()(const XPoly& p) const {
      j["kind"] = "xpoly";
      j["coeffs"] = p.to_json();
    }
    void operator()(const EtaDescriptor& e) const {
      j["kind"] = "eta";
      j["factors"] = e.factors;
    }
    void operator()(const CmDescriptor& c) const {
      j["kind"] = "cm";
      j["level"] = c.level;
    }
    void operator()(const EisensteinCombination& c) const {
      j["kind"] = "eisenstein";
      j["level"] = c.level;
      nlohmann::json terms = nlohmann::json::array();
      for (std::size_t i = 0; i < c.terms.size(); ++i)
        terms.push_back({{"coeff", {c.coeffs[i].a().get_str(), c.coeffs[i].b().get_str()}},
                         {"psi", c.terms[i].psi.discriminant},
                         {"phi", c.terms[i].phi.discriminant},
                         {"t", c.terms[i].t}});
      j["terms"] = terms;
    }
  };
  std::visit(Visitor{j}, rep_);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cache_->series) j["expansion"] = cache_->series->to_json();
  return j;
}

// ---------------------------------------------------------------- cusps

CuspExpansions cusp_expansions(const FormHandle& f, long order) {
  const int k = f.weight();
  struct Visitor {
    const FormHandle& f;
    long order;
    int k;
    CuspExpansions theta(const ThetaPolynomial& p) const {
      return {p.expansion(order), p.jacobi_transform().expansion(order), Sqrt2Elem(1),
              -static_cast<int>(p.total_degree() / 2)};
    }
    CuspExpansions operator()(const ThetaPolynomial& p) const { return theta(p); }
    CuspExpansions operator()(const XPoly&) const {
      throw DomainError("a bare P-image has no generator form for t < 1; convert it with p_inverse first");
    }
    CuspExpansions operator()(const EtaDescriptor&) const {
      throw DomainError("eta products are evaluated through the eta transformation, not cusp series");
    }
    CuspExpansions operator()(const CmDescriptor&) const {
      ThetaPolynomial p = ThetaPolynomial::from_xpoly(*f.group(), p_map(f), k);
      CuspExpansions out = theta(p);
      out.infinity = f.expansion(order);
      return out;
    }
    CuspExpansions operator()(const EisensteinCombination& c) const {
      long N = c.level, infl = c.inflation;
      // (B₂g)(it) = F(iy), y = t/(2·infl); F(iy) = N^{k/2}(Ny)^{−k}(W_N F)(i/(Ny))
      long stretch = (N + 2 * infl - 1) / (2 * infl);
      QSeries image(order * stretch);
      for (std::size_t j = 0; j < c.terms.size(); ++j) {
        if (c.coeffs[j].is_zero()) continue;
        FrickeImage w = fricke_eisenstein(k, c.terms[j], N);
        image += eisenstein_qexp(k, w.target.psi, w.target.phi, w.target.t, order * stretch) *
                 (c.coeffs[j] * w.coefficient);
      }
      QSeries zero = image.rescaled(mpq_class(2 * infl, N)).truncated(order);
      Sqrt2Elem pref = Sqrt2Elem::sqrt2_pow(-k * log2_exact(mpq_class(N)));
      pref *= Sqrt2Elem(mpq_class(ipow(2 * infl, k)));
      return {f.expansion(order), std::move(zero), pref, -k};
    }
  };
  return std::visit(Visitor{f, order, k}, f.representation());
}

// ---------------------------------------------------------------- P-map

namespace {

struct BasisKey {
  Group g;
  int k;
  auto operator<=>(const BasisKey&) const = default;
};

long p_map_order(const GroupTag& g, int k) { return g.lattice_step() * (space_dimension(g, k) + 10); }

const std::vector<QSeries>& basis_expansions(const GroupTag& g, int k) {
  static std::mutex mutex;
  static std::map<BasisKey, std::vector<QSeries>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, fresh] = cache.try_emplace(BasisKey{g.label, k});
  if (fresh) {
    long order = p_map_order(g, k);
    for (long i = 0; i < space_dimension(g, k); ++i)
      it->second.push_back(ThetaPolynomial::from_xpoly(g, XPoly::monomial(i), k).expansion(order));
  }
  return it->second;
}

}  // namespace

std::vector<FormHandle> monomial_basis(const GroupTag& g, int k) {
  std::vector<FormHandle> out;
  for (long i = 0; i < space_dimension(g, k); ++i) out.push_back(p_inverse(XPoly::monomial(i), k, g));
  return out;
}

XPoly p_map(const FormHandle& f) {
  if (const auto* p = std::get_if<XPoly>(&f.representation())) return *p;
  if (!f.group()) throw DomainError("p_map needs a form attached to one of the groups g1_4, g4, g1_8");
  const GroupTag g = *f.group();
  const int k = f.weight();
  const long dim = space_dimension(g, k);
  const long step = g.lattice_step();
  const long order = p_map_order(g, k);
  const auto& basis = basis_expansions(g, k);
  QSeries target = f.expansion(order);
  const long rows = dim + 10;
  Sqrt2Matrix A(rows, std::vector<Sqrt2Elem>(dim));
  std::vector<Sqrt2Elem> b(rows);
  for (long r = 0; r < rows; ++r) {
    for (long i = 0; i < dim; ++i) A[r][i] = basis[i][r * step];
    b[r] = target[r * step];
  }
  long bad = -1;
  auto x = solve_exact(std::move(A), std::move(b), &bad);
  if (!x) {
    throw DomainError("form is not in M_" + std::to_string(k) + "(" + g.name() +
                      "): coefficient system inconsistent at q^(" + std::to_string(bad * step) + "/8)");
  }
  QSeries residual = target;
  for (long i = 0; i < dim; ++i)
    if (!(*x)[i].is_zero()) residual -= basis[i] * (*x)[i];
  long v = residual.valuation();
  if (v < residual.order())
    throw DomainError("form is not in M_" + std::to_string(k) + "(" + g.name() + "): residual " +
                      residual[v].to_string() + " at q^(" + std::to_string(v) + "/8)");
  return XPoly(std::move(*x));
}

FormHandle p_inverse(const XPoly& p, int k, const GroupTag& g) {
  return FormHandle::from_theta(g, ThetaPolynomial::from_xpoly(g, p, k), k);
}

std::vector<XPoly> vanishing_subspace_basis(const GroupTag& g, int k) {
  std::vector<XPoly> out;
  XPoly d = g.vanishing_divisor();
  for (long j = 0; j + 2 < space_dimension(g, k); ++j) out.push_back(d * XPoly::monomial(j));
  return out;
}

WeightFunction moment_weight_function(const GroupTag& g) {
  switch (g.label) {
    case Group::Gamma1_4: return {XPoly({Sqrt2Elem(1)})};
    case Group::Gamma4: return {XPoly({0, 0, 0, 1, 1, 1, 1})};
    case Group::Gamma1_8: {
      XPoly xm1({Sqrt2Elem(-1), Sqrt2Elem(1)}), xp1({Sqrt2Elem(1), Sqrt2Elem(1)});
      XPoly xps({Sqrt2Elem::sqrt2(), Sqrt2Elem(1)});
      return {xm1 * XPoly::monomial(2) * xp1 * xp1 * xps};
    }
  }
  throw DomainError("unknown group");
}

}  // namespace ellk
