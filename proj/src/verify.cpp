#include "ellk/verify.hpp"

#include "ellk/appendix.hpp"
#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "ellk/numerics.hpp"
#include "ellk/parallel.hpp"
#include "ellk/properties.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace ellk {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

nlohmann::json CheckRow::to_json() const {
  nlohmann::json j = {{"item", item},         {"status", to_string(status)}, {"lhs", lhs},
                      {"rhs", rhs},           {"abs_diff", abs_diff},        {"prec_bits", prec_bits},
                      {"runtime_ms", runtime_ms}};
  if (!note.empty()) j["note"] = note;
  return j;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw DomainError("unknown output format '" + name + "' (json, csv, text)");
}

// ---------------------------------------------------------------- config

RunConfig RunConfig::defaults() {
  RunConfig c;
  if (const char* env = std::getenv("ELLK_CACHE_DIR"); env && *env) {
    c.cache_dir = env;
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    c.cache_dir = std::string(home) + "/.cache/ellk";
  } else {
    c.cache_dir = ".ellk-cache";
  }
  return c;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

void RunConfig::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "precision_digits" || key == "prec") precision_digits = std::stol(value);
      else if (key == "cache_dir") cache_dir = value;
      else if (key == "suite" || key == "suites") suites = split(value, ',');
      else if (key == "format") format = parse_format(value);
      else if (key == "parallelism" || key == "jobs") parallelism = static_cast<unsigned>(std::stoul(value));
      else throw DomainError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"examples", "theorem2", "eisenstein", "cm",
                                                 "appendix", "properties", "all"};
  return names;
}

void RunConfig::validate() const {
  if (precision_digits < 30) throw DomainError("precision_digits must be at least 30");
  for (const auto& s : suites)
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
      throw DomainError("unknown suite '" + s + "'");
}

// ---------------------------------------------------------------- cache

ConstantCache::ConstantCache(std::string dir) : path_(std::move(dir) + "/constants.jsonl") {}

std::optional<BigReal> ConstantCache::lookup(const std::string& key, Precision prec) const {
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::string line;
  long best_bits = -1;
  nlohmann::json best;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key") || j["key"] != key) continue;
    long bits = j.value("prec_bits", 0L);
    if (bits >= prec.bits() && bits > best_bits) {
      best_bits = bits;
      best = j;
    }
  }
  if (best_bits < 0) return std::nullopt;
  Real v = Real::from_string(best["value_decimal"].get<std::string>(), best_bits + 16);
  Real e = Real::from_string(best["err_decimal"].get<std::string>(), BigReal::kRadiusPrec);
  e.mul_2exp(1);
  Real out = v.with_prec(prec.bits());
  return BigReal(out, err_add(err_add(e, ulp(v)), ulp(out)));
}

void ConstantCache::store(const std::string& key, const BigReal& value, const nlohmann::json& fields) {
  std::filesystem::create_directories(std::filesystem::path(path_).parent_path());
  std::ofstream out(path_, std::ios::app);
  if (!out) throw DomainError("cannot write cache file " + path_);
  int digits = static_cast<int>(static_cast<double>(value.prec()) * 0.30103) + 5;
  nlohmann::json j = fields.is_object() ? fields : nlohmann::json::object();
  j["key"] = key;
  j["prec_bits"] = static_cast<long>(value.prec());
  j["value_decimal"] = value.value().to_string(digits);
  j["err_decimal"] = value.err().to_string(8);
  out << j.dump() << "\n";
}

// ---------------------------------------------------------------- constants

BigReal constant_value(const std::string& label, Precision prec) {
  static const std::regex pi_re(R"(pi(?:\^(\d+))?)");
  static const std::regex zeta_re(R"(zeta\((\d+)\))");
  static const std::regex l_re(R"(L_(-?\d+)\((\d+)\))");
  static const std::regex period_re(R"(pi\^(\d+)\*Omega_(-\d+)\^(\d+))");
  static const std::regex moment_re(R"(M\[(\w+),(\d+),(\d+),(\d+)\])");
  std::smatch m;
  Precision wp = prec.plus_bits(24);
  auto trim_to = [&](const BigReal& v) {
    Real out = v.value().with_prec(prec.bits());
    return BigReal(out, err_add(v.err(), ulp(out)));
  };
  if (std::regex_match(label, m, pi_re)) {
    long n = m[1].matched ? std::stol(m[1]) : 1;
    return trim_to(BigReal(pow(Real::pi(wp.bits()), n)));
  }
  if (std::regex_match(label, m, zeta_re)) return zeta(std::stol(m[1]), prec);
  if (std::regex_match(label, m, l_re)) return dirichlet_L(std::stoi(m[1]), std::stol(m[2]), prec);
  if (std::regex_match(label, m, period_re)) {
    long a = std::stol(m[1]), b = std::stol(m[3]);
    BigReal om = omega(std::stoi(m[2]), wp);
    BigReal v(pow(Real::pi(wp.bits()), a));
    for (long i = 0; i < b; ++i) v = v * om;
    return trim_to(v);
  }
  if (std::regex_match(label, m, moment_re)) {
    MomentSpec spec{GroupTag::parse(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stol(m[4])};
    return compute_moment(spec, prec);
  }
  if (label == "x1") return named_moment(1, prec);
  if (label == "x2") return named_moment(2, prec);
  throw DomainError("unknown constant '" + label + "'");
}

// ---------------------------------------------------------------- identities

namespace {

Sqrt2Elem q(long a, long b = 1) { return Sqrt2Elem(mpq_class(a, b)); }
Sqrt2Elem qs(const std::string& text) { return parse_sqrt2(text); }

std::vector<Identity> build_registry() {
  const GroupTag G14 = GroupTag::of(Group::Gamma1_4), G4 = GroupTag::of(Group::Gamma4),
                 G8 = GroupTag::of(Group::Gamma1_8);
  const XPoly one({1});
  const XPoly X = XPoly::monomial(1);
  const XPoly two_m_minus_1({-1, 2});
  const XPoly spread = XPoly({1, 1}) * XPoly({1, 0, 1});  // (1+X)(1+X²)
  const XPoly Pa({13664, -908, -14572, 10177, 201473});
  const XPoly Pb({1037, -4576, 1037, -2197, 14518});
  const XPoly Pc({745664, -718485, -718485, 6280350, 15973982});
  const XPoly h8 = XPoly({0, 1, 2, 1});  // X(X+1)²
  std::vector<Identity> r;
  r.push_back({"g1_4 k=4: int K^2 dm = 7/2 zeta(3)", G14, 4, {{1, 1, one}}, {{q(7, 2), "zeta(3)"}}, 60});
  r.push_back({"g1_4 k=4: int K K' dm = pi^3/8", G14, 4, {{1, 2, one}}, {{q(1, 8), "pi^3"}}, 60});
  r.push_back({"g1_4 k=5: int K^3 dm = 4/5 pi^4 Omega^4", G14, 5, {{1, 1, one}}, {{q(4, 5), "pi^4*Omega_-4^4"}}, 60});
  r.push_back(
      {"g1_4 k=5: int K^2 K' dm = 2/3 pi^4 Omega^4", G14, 5, {{1, 2, one}}, {{q(2, 3), "pi^4*Omega_-4^4"}}, 60});
  r.push_back({"g1_4 k=6: int K^4 (2m-1) dm = 93/8 zeta(5)", G14, 6, {{1, 1, two_m_minus_1}}, {{q(93, 8), "zeta(5)"}},
               60});
  r.push_back({"g1_4 k=6: int K^3 K' (2m-1) dm = pi^5/64", G14, 6, {{1, 2, two_m_minus_1}}, {{q(1, 64), "pi^5"}}, 60});
  r.push_back({"g1_4 k=7: int K^4 K' dm in span(x1, x2)", G14, 7, {{1, 2, one}},
               {{q(17, 30), "M[g1_4,7,1,0]"}, {q(11, 120), "M[g1_4,7,1,1]"}}, 100});
  r.push_back({"g1_4 k=7: int K^3 K'^2 m dm in span(x1, x2)", G14, 7, {{1, 3, X}},
               {{q(-2, 15), "M[g1_4,7,1,0]"}, {q(31, 60), "M[g1_4,7,1,1]"}}, 100});
  r.push_back({"g1_4 k=9: int K^4 K'^3 m^2 dm in span(x1, x2, pi^8 Omega^8)", G14, 9, {{1, 4, XPoly::monomial(2)}},
               {{q(4, 21), "M[g1_4,9,1,0]"}, {q(16, 35), "M[g1_4,9,1,1]"}, {q(-432, 175), "pi^8*Omega_-4^8"}}, 150});

  r.push_back({"g4 k=3: int K m^(-3/4)/((1+m^(1/2))(1+m^(1/4))) dm", G4, 3, {{1, 1, one}},
               {{q(-1, 16), "pi^2"}, {q(1), "L_-4(2)"}, {q(1), "pi^2*Omega_-4^2"}}, 60});
  r.push_back({"g4 k=4: int K'^2 m^(-3/4)/((1+m^(1/2))(1+m^(1/4))) dm", G4, 4, {{1, 3, one}},
               {{q(7, 2), "x1"}, {q(3, 4), "x2"}, {q(1, 16), "pi^3"}}, 60});
  r.push_back({"g4 k=5: int K^2 K'/((1+m^(1/4))(1+m^(1/2))) dm", G4, 5, {{1, 2, XPoly::monomial(3)}},
               {{q(1, 320), "pi^4"}, {q(1, 5), "pi^4*Omega_-4^4"}}, 60});
  r.push_back({"g4 k=5: int K^3 m^(-1/2) dm", G4, 5, {{1, 1, X * spread}}, {{q(6, 5), "pi^4*Omega_-4^4"}}, 60});
  r.push_back({"g4 k=5: int K^3 m^(1/2) dm", G4, 5, {{1, 1, XPoly::monomial(5) * spread}},
               {{q(24, 5), "L_-4(4)"}, {q(6, 25), "pi^4*Omega_-4^4"}}, 60});
  r.push_back({"g4 k=7: int K^5 Pa(X)/(X^3(X+1)) dm", G4, 7, {{1, 1, Pa * XPoly({1, 0, 1})}},
               {{q(49, 32), "pi^6"}, {q(163968), "pi^6*Omega_-4^6"}}, 200});
  r.push_back({"g4 k=7: int K^2 K'^3 Pb(X)/(X^3(X^2+1)) dm", G4, 7, {{1, 4, Pb * XPoly({1, 1})}},
               {{q(16592), "pi^6*Omega_-4^6"}, {q(-119, 32), "pi^6"}}, 200});
  r.push_back({"g4 k=7: int K^5 Pc(X)/(X^3(X+1)(X^2+1)) dm", G4, 7, {{1, 1, Pc}},
               {{q(1283520), "L_-4(6)"}, {q(-197629, 64), "pi^6"}, {q(8947968), "pi^6*Omega_-4^6"}}, 200});

  r.push_back({"g1_8 k=3: int K/((X-1)X^2(X+1)^2(X+sqrt2)) dm", G8, 3, {{1, 1, one}},
               {{qs("4+4*sqrt2"), "L_-4(2)"}, {qs("-8/3-8/3*sqrt2"), "L_-8(2)"}, {qs("-1/18-1/18*sqrt2"), "pi^2"}},
               120});
  r.push_back({"g1_8 k=3: int K/((X-1)X(1+X)^2) dm", G8, 3, {{1, 1, XPoly({0, Sqrt2Elem::sqrt2(), 1})}},
               {{q(1, 18), "pi^2"}, {qs("4/9*sqrt2"), "pi^2*Omega_-8^2"}}, 120});
  r.push_back({"g1_8 k=5: (c1 K^3 + c2 K^2 K' + c3 K K'^2)/(X(X-1)(X+sqrt2)) relation", G8, 5,
               {{qs("15922+33174*sqrt2"), 1, h8}, {qs("-33630-285*sqrt2"), 2, h8}, {qs("-63927-74469*sqrt2"), 3, h8}},
               {{qs("-116224+169856*sqrt2"), "L_-8(4)"},
                {qs("-1210224/5+414048/5*sqrt2"), "L_-4(4)"},
                {qs("29/4-117/16*sqrt2"), "pi^4"},
                {qs("23072/9+82712/9*sqrt2"), "pi^4*Omega_-8^4"},
                {qs("3118054/25-2577858/25*sqrt2"), "pi^4*Omega_-4^4"}},
               200});
  return r;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

double tolerance_exponent(Precision prec, double slack) { return -(static_cast<double>(prec.digits()) - slack); }

bool below(const Real& diff, double log10_bound) { return diff.is_zero() || diff.log10_abs() < log10_bound; }

CheckRow compare_row(const std::string& item, const BigReal& lhs, const BigReal& rhs, Precision prec, double slack,
                     double ms) {
  CheckRow r;
  r.item = item;
  Real diff = abs(lhs.value() - rhs.value().with_prec(lhs.prec()));
  r.status = below(diff, tolerance_exponent(prec, slack)) ? CheckStatus::Pass : CheckStatus::Fail;
  r.lhs = lhs.to_string(30);
  r.rhs = rhs.to_string(30);
  r.abs_diff = diff.to_string(3);
  r.prec_bits = prec.bits();
  r.runtime_ms = ms;
  return r;
}

std::string coeff_list(const std::vector<Sqrt2Elem>& c) {
  std::string s = "[";
  for (std::size_t j = 0; j < c.size(); ++j) s += (j ? ", " : "") + c[j].to_string();
  return s + "]";
}

}  // namespace

const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> reg = build_registry();
  return reg;
}

std::vector<Identity> identities_for(Group g) {
  std::vector<Identity> out;
  for (const auto& id : identity_registry())
    if (id.group.label == g) out.push_back(id);
  return out;
}

namespace {

std::vector<BigReal> bare_moments(const Identity& id, Precision prec) {
  std::vector<std::pair<int, XPoly>> items;
  for (const auto& t : id.lhs) items.emplace_back(t.s, t.h);
  std::vector<BigReal> out;
  for (auto& r : integrate_moments(id.group, id.k, items, prec)) out.push_back(r.value);
  return out;
}

BigReal weighted_sum(const std::vector<Sqrt2Elem>& c, const std::vector<BigReal>& v, Precision prec) {
  const mpfr_prec_t wp = prec.bits() + 16;
  BigReal acc(Real(0, wp), err_zero());
  for (std::size_t j = 0; j < c.size(); ++j) acc = acc + BigReal(c[j].to_real(wp)) * v[j];
  return acc;
}

}  // namespace

BigReal identity_lhs(const Identity& id, Precision prec) {
  std::vector<Sqrt2Elem> c;
  for (const auto& t : id.lhs) c.push_back(t.coeff);
  return weighted_sum(c, bare_moments(id, prec), prec);
}

BigReal identity_rhs(const Identity& id, Precision prec) {
  std::vector<Sqrt2Elem> c;
  std::vector<BigReal> v;
  for (const auto& t : id.rhs) {
    c.push_back(t.coeff);
    v.push_back(constant_value(t.label, prec));
  }
  return weighted_sum(c, v, prec);
}

CheckRow check_identity(const Identity& id, Precision prec) {
  auto t0 = std::chrono::steady_clock::now();
  BigReal l = identity_lhs(id, prec), r = identity_rhs(id, prec);
  return compare_row(id.item, l, r, prec, 10, ms_since(t0));
}

Rediscovery rediscover_identity(const Identity& id, Precision prec, const mpz_class& max_height) {
  auto t0 = std::chrono::steady_clock::now();
  ValueSource src = [&id](Precision p) {
    std::vector<BigReal> v = bare_moments(id, p);
    for (const auto& t : id.rhs) v.push_back(constant_value(t.label, p));
    return v;
  };
  std::vector<Sqrt2Elem> expected;
  for (const auto& t : id.lhs) expected.push_back(t.coeff);
  for (const auto& t : id.rhs) expected.push_back(-t.coeff);
  Field field = id.group.over_sqrt2() ? Field::Sqrt2 : Field::Rational;
  Rediscovery out;
  out.search = find_relation(src, field, prec, max_height);
  if (out.search.status == PslqStatus::Found) {
    const auto& c = out.search.relation->coeffs;
    std::size_t p = 0;
    while (p < expected.size() && expected[p].is_zero()) ++p;
    if (p < expected.size() && !c[p].is_zero()) {
      Sqrt2Elem lambda = c[p] / expected[p];
      out.matches = true;
      for (std::size_t j = 0; j < c.size(); ++j) out.matches = out.matches && c[j] == lambda * expected[j];
    }
  }
  CheckRow& r = out.row;
  r.item = "relation: " + id.item;
  r.prec_bits = prec.bits();
  r.rhs = coeff_list(expected);
  if (out.search.relation) {
    r.lhs = coeff_list(out.search.relation->coeffs);
    r.abs_diff = out.search.relation->residual.to_string(3);
    r.note = "certified at " + std::to_string(out.search.relation->certified_at_bits) +
             " bits, normalized residual " + out.search.relation->certified_residual.to_string(3);
  } else {
    r.lhs = "no relation (" + to_string(out.search.status) + ")";
    r.abs_diff = "-";
  }
  if (out.search.status == PslqStatus::Found && out.matches && out.search.relation->certified)
    r.status = CheckStatus::Pass;
  else if (out.search.status == PslqStatus::Inconclusive)
    r.status = CheckStatus::Inconclusive;
  else
    r.status = CheckStatus::Fail;
  r.runtime_ms = ms_since(t0);
  return out;
}

// ---------------------------------------------------------------- suites

std::vector<CheckRow> example_rows(Precision prec) {
  std::vector<CheckRow> rows;
  for (const auto& id : identity_registry()) rows.push_back(check_identity(id, prec));

  const GroupTag G14 = GroupTag::of(Group::Gamma1_4);
  auto t0 = std::chrono::steady_clock::now();
  FormHandle f6 = FormHandle::eta({{2, 12}});
  auto L = lvalue_via_qexp(f6, std::vector<int>{4, 5}, prec);
  BigReal k4 = compute_moment({G14, 6, 1, 0}, prec);
  rows.push_back(compare_row("g1_4 k=6: int K^4 dm = 24 L(eta(2t)^12, 5)", k4, L[1] * mpq_class(24), prec, 10,
                             ms_since(t0)));
  t0 = std::chrono::steady_clock::now();
  BigReal k31 = compute_moment({G14, 6, 2, 0}, prec);
  BigReal rhs = L[0] * mpq_class(6) * BigReal(Real::pi(prec.bits() + 16));
  rows.push_back(compare_row("g1_4 k=6: int K^3 K' dm = 6 pi L(eta(2t)^12, 4)", k31, rhs, prec, 10, ms_since(t0)));

  t0 = std::chrono::steady_clock::now();
  FormHandle f4 = FormHandle::eta({{2, 4}, {4, 4}});
  auto Lf = lvalue_via_qexp(f4, std::vector<int>{2, 3}, prec);
  BigReal x1 = named_moment(1, prec), x2 = named_moment(2, prec);
  BigReal x1_rhs = Lf[1] * mpq_class(4) + Lf[0] * mpq_class(4) * BigReal(Real::pi(prec.bits() + 16));
  rows.push_back(compare_row("g4 k=4: x1 = 4 L(f,3) + 4 pi L(f,2), f = eta(2t)^4 eta(4t)^4", x1, x1_rhs, prec, 10,
                             ms_since(t0)));
  rows.push_back(compare_row("g4 k=4: x2 = 8 L(f,3), f = eta(2t)^4 eta(4t)^4", x2, Lf[1] * mpq_class(8), prec, 10, 0));
  return rows;
}

std::vector<CheckRow> bridge_rows(Precision prec) {
  std::vector<MomentSpec> specs;
  const std::vector<std::pair<Group, std::vector<int>>> cases = {
      {Group::Gamma1_4, {4, 5, 6}}, {Group::Gamma4, {3, 4}}, {Group::Gamma1_8, {3}}};
  for (const auto& [g, ks] : cases)
    for (int k : ks)
      for (int s = 1; s < k; ++s)
        for (long i = 0; i <= max_moment_index(GroupTag::of(g), k); ++i) specs.push_back({GroupTag::of(g), k, s, i});
  std::vector<CheckRow> rows(specs.size());
  parallel_for(specs.size(), [&](std::size_t j) {
    auto t0 = std::chrono::steady_clock::now();
    const MomentSpec& sp = specs[j];
    try {
      BigReal a = compute_moment(sp, prec);
      BigReal b = moment_via_lvalue(sp, prec);
      rows[j] = compare_row(sp.describe() + " quadrature vs L-value", a, b, prec, 8, ms_since(t0));
    } catch (const std::exception& e) {
      rows[j].item = sp.describe();
      rows[j].status = CheckStatus::Fail;
      rows[j].note = e.what();
    }
  });
  return rows;
}

std::vector<CheckRow> eisenstein_rows(Precision prec) {
  std::vector<CheckRow> rows;
  const GroupTag G14 = GroupTag::of(Group::Gamma1_4);
  for (int k : {4, 6, 8}) {
    auto combos = eisenstein_vanishing_combination(G14, k);
    if (combos.size() != 1) {
      CheckRow r;
      r.item = "g1_4 k=" + std::to_string(k) + " Eisenstein combination";
      r.status = CheckStatus::Fail;
      r.note = "expected one vanishing combination, got " + std::to_string(combos.size());
      rows.push_back(r);
      continue;
    }
    FormHandle f = FormHandle::eisenstein(G14, k, combos[0]);
    std::vector<int> ss;
    for (int s = k - 1; s >= 2; --s) ss.push_back(s);
    auto t0 = std::chrono::steady_clock::now();
    auto L = lvalue_via_qexp(f, ss, prec);
    double ms = ms_since(t0) / static_cast<double>(ss.size());
    std::vector<BigReal> L_high;
    for (std::size_t j = 0; j < ss.size(); ++j) {
      int s = ss[j];
      t0 = std::chrono::steady_clock::now();
      // (1 − (1+2^k)2^{−s} + 2^k 4^{−s})·ζ(s)·ζ(s−k+1)
      mpq_class euler = 1 - mpq_class((mpz_class(1) << k) + 1, mpz_class(1) << s) +
                        mpq_class(mpz_class(1) << k, mpz_class(1) << (2 * s));
      // ζ(1−n) = −B_n/n with B₁ = +1/2
      mpq_class zeta_neg = k - s == 1 ? mpq_class(-1, 2) : mpq_class(-bernoulli(static_cast<unsigned>(k - s)) / (k - s));
      BigReal factored = zeta(s, prec.plus_bits(16)) * (euler * zeta_neg);
      std::string tag = "g1_4 k=" + std::to_string(k) + " s=" + std::to_string(s);
      rows.push_back(compare_row(tag + ": Eisenstein L-value factored form vs Mellin", L[j], factored, prec, 8,
                                 ms + ms_since(t0)));
      // π^{k−1−s}·L(f,s) ∈ span{π^{k−1}, ζ(k−1)}
      t0 = std::chrono::steady_clock::now();
      ValueSource src = [&, s, j](Precision p) {
        BigReal Lv = p == prec ? L[j] : BigReal();
        if (p != prec) {
          if (L_high.empty()) L_high = lvalue_via_qexp(f, ss, p);
          Lv = L_high[j];
        }
        Real pw = pow(Real::pi(p.bits() + 16), k - 1 - s);
        return std::vector<BigReal>{Lv * BigReal(pw), constant_value("pi^" + std::to_string(k - 1), p),
                                    zeta(k - 1, p)};
      };
      RelationSearch rs = find_relation(src, Field::Rational, prec, mpz_class("10000000000"));
      CheckRow r;
      r.item = tag + ": pi^(k-1-s) L(E,s) in span(pi^" + std::to_string(k - 1) + ", zeta(" + std::to_string(k - 1) +
               "))";
      r.prec_bits = prec.bits();
      r.rhs = "relation with nonzero first coefficient";
      bool ok = rs.status == PslqStatus::Found && rs.relation->certified && !rs.relation->coeffs[0].is_zero();
      r.status = ok ? CheckStatus::Pass
                    : (rs.status == PslqStatus::Inconclusive ? CheckStatus::Inconclusive : CheckStatus::Fail);
      r.lhs = rs.relation ? coeff_list(rs.relation->coeffs) : to_string(rs.status);
      r.abs_diff = rs.relation ? rs.relation->residual.to_string(3) : "-";
      r.runtime_ms = ms_since(t0);
      rows.push_back(r);
    }
  }
  return rows;
}

std::vector<CheckRow> cm_rows(Precision prec) {
  std::vector<std::pair<int, int>> cases = {{4, 5}, {8, 3}, {8, 5}, {16, 3}};
  std::vector<std::pair<int, std::pair<int, int>>> items;
  for (auto [level, k] : cases)
    for (int s = 1; s < k; ++s) items.push_back({s, {level, k}});
  std::vector<CheckRow> rows(items.size());
  parallel_for(items.size(), [&](std::size_t j) {
    auto t0 = std::chrono::steady_clock::now();
    auto [s, lk] = items[j];
    CheckRow& r = rows[j];
    r.item = "CM level " + std::to_string(lk.first) + " k=" + std::to_string(lk.second) + " s=" + std::to_string(s) +
             ": L/(pi^s |D|^((s-1)/2) Omega^(k-1)) rational";
    r.prec_bits = prec.bits();
    try {
      CmCheck c = cm_lvalue_check(lk.first, lk.second, s, prec);
      r.lhs = c.ratio.to_string(30);
      if (c.zero) {
        r.rhs = "0 (L-value vanishes)";
        r.status = CheckStatus::Pass;
        r.abs_diff = c.lvalue.value().to_string(3);
      } else if (c.rational) {
        r.rhs = c.rational->get_str();
        Real d = abs(c.ratio.value() - Real::from_rational(*c.rational, c.ratio.prec()));
        r.abs_diff = d.to_string(3);
        r.status = CheckStatus::Pass;
      } else {
        r.rhs = "no rational of height < 10^6";
        r.status = CheckStatus::Fail;
        r.note = c.residual;
        if (c.sqrt2_multiple) r.note += "; ratio = sqrt2*(" + c.sqrt2_multiple->get_str() + ")";
      }
    } catch (const std::exception& e) {
      r.status = CheckStatus::Fail;
      r.note = e.what();
    }
    r.runtime_ms = ms_since(t0);
  });
  return rows;
}

std::vector<CheckRow> appendix_rows(Precision prec) {
  std::vector<CheckRow> rows;
  for (int n = 0; n <= 8; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    FlCoefficient c = fl_coefficient(n, prec);
    rows.push_back(compare_row("Fourier-Legendre coefficient n=" + std::to_string(n) + " quadrature vs closed form",
                               c.quadrature, c.closed_form, prec, 5, ms_since(t0)));
  }
  Precision p40 = std::max(prec, Precision::from_digits(40));
  auto t0 = std::chrono::steady_clock::now();
  Extrapolated hyp = hypergeometric_lvalue(200, p40);
  double ms_h = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  ParsevalCheck par = parseval_check(200, p40);
  double ms_p = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  BigReal mel = lvalue_via_qexp(FormHandle::eta({{2, 12}}), 5, p40);
  double ms_m = ms_since(t0);
  BigReal par16 = par.series.value * mpq_class(1, 16);
  auto thirty = [&](const std::string& item, const BigReal& a, const BigReal& b, double ms) {
    CheckRow r = compare_row(item, a, b, p40, 0, ms);
    Real diff = abs(a.value() - b.value());
    r.status = below(diff, -30) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
  };
  rows.push_back(thirty("L(eta(2t)^12,5): 9F8 series * pi^6/1024 vs Mellin", hyp.value, mel, ms_h + ms_m));
  rows.push_back(thirty("L(eta(2t)^12,5): Parseval series / 16 vs Mellin", par16, mel, ms_p));
  rows.push_back(thirty("int K^2 K'^2 dm: Parseval series vs quadrature", par.series.value, par.quadrature, ms_p));
  for (long p : {7L, 11L, 13L}) {
    t0 = std::chrono::steady_clock::now();
    SupercongruenceResult s = supercongruence_check(p);
    CheckRow r;
    r.item = "supercongruence mod p^6, p=" + std::to_string(p);
    r.status = s.holds ? CheckStatus::Pass : CheckStatus::Fail;
    r.lhs = s.lhs.residue.get_str();
    r.rhs = s.rhs.residue.get_str() + " (p*a_p, a_p=" + s.a_p.get_str() + ")";
    r.abs_diff = s.holds ? "0" : "differs";
    r.runtime_ms = ms_since(t0);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CheckRow> property_rows(Precision prec) {
  std::vector<CheckRow> rows;
  rows.push_back(planted_pslq_recovery(100, 120, 7));
  for (auto& r : precision_doubling_rows(std::min<long>(prec.digits(), 60))) rows.push_back(r);
  for (auto& r : modular_invariant_rows(40)) rows.push_back(r);
  for (auto& r : dimension_table_rows(24)) rows.push_back(r);
  return rows;
}

std::vector<CheckRow> run_suite(const std::string& suite, const RunConfig& config) {
  config.validate();
  set_parallelism(config.parallelism);
  Precision prec = Precision::from_digits(config.precision_digits);
  if (suite == "examples") return example_rows(prec);
  if (suite == "theorem2") return bridge_rows(prec);
  if (suite == "eisenstein") return eisenstein_rows(prec);
  if (suite == "cm") return cm_rows(prec);
  if (suite == "appendix") return appendix_rows(prec);
  if (suite == "properties") return property_rows(prec);
  if (suite == "all") {
    std::vector<CheckRow> all;
    for (const auto& s : suite_names()) {
      if (s == "all") continue;
      auto part = run_suite(s, config);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw DomainError("unknown suite '" + suite + "'");
}

int exit_code_for(const std::vector<CheckRow>& rows) {
  bool inconclusive = false;
  for (const auto& r : rows) {
    if (r.status == CheckStatus::Fail) return 1;
    if (r.status == CheckStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

std::string format_rows(const std::vector<CheckRow>& rows, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json:
      for (const auto& r : rows) os << r.to_json().dump() << "\n";
      break;
    case OutputFormat::Csv: {
      auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
      };
      os << "item,status,lhs,rhs,abs_diff,prec_bits,runtime_ms\n";
      for (const auto& r : rows)
        os << quote(r.item) << "," << to_string(r.status) << "," << quote(r.lhs) << "," << quote(r.rhs) << ","
           << quote(r.abs_diff) << "," << r.prec_bits << "," << r.runtime_ms << "\n";
      break;
    }
    case OutputFormat::Text:
      for (const auto& r : rows) {
        std::string tag = r.status == CheckStatus::Pass ? "PASS" : (r.status == CheckStatus::Fail ? "FAIL" : "INCO");
        os << tag << "  " << r.item << "\n      lhs " << r.lhs << "\n      rhs " << r.rhs << "\n      |diff| "
           << r.abs_diff << "  (" << r.prec_bits << " bits, " << static_cast<long>(r.runtime_ms) << " ms)";
        if (!r.note.empty()) os << "\n      " << r.note;
        os << "\n";
      }
      break;
  }
  return os.str();
}

}  // namespace ellk
