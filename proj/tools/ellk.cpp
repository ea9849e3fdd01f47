#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "ellk/parallel.hpp"
#include "ellk/relations.hpp"
#include "ellk/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace ellk;

namespace {

constexpr int kUsageError = 2;

struct Globals {
  std::string config_file;
  long digits = 0;
  std::string format;
  std::string cache_dir;
  unsigned jobs = 0;
};

RunConfig resolve(const Globals& g) {
  RunConfig c = RunConfig::defaults();
  if (!g.config_file.empty()) c.apply_file(g.config_file);
  if (g.digits > 0) c.precision_digits = g.digits;
  if (!g.format.empty()) c.format = parse_format(g.format);
  if (!g.cache_dir.empty()) c.cache_dir = g.cache_dir;
  if (g.jobs > 0) c.parallelism = g.jobs;
  c.validate();
  set_parallelism(c.parallelism);
  return c;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string show(const BigReal& x, long digits) {
  return x.to_string(static_cast<int>(digits)) + "  (err " + x.err_string() + ")";
}

BigReal cached_moment(const MomentSpec& spec, Precision prec, ConstantCache& cache) {
  std::string key = "M[" + spec.group.name() + "," + std::to_string(spec.k) + "," + std::to_string(spec.s) + "," +
                    std::to_string(spec.i) + "]";
  if (auto hit = cache.lookup(key, prec)) return *hit;
  BigReal v = compute_moment(spec, prec);
  cache.store(key, v, spec.to_json());
  return v;
}

int cmd_moment(const Globals& g, const std::string& gamma, int k, int s, long i) {
  RunConfig c = resolve(g);
  MomentSpec spec{GroupTag::parse(gamma), k, s, i};
  spec.validate();
  Precision prec = Precision::from_digits(c.precision_digits);
  ConstantCache cache(c.cache_dir);
  BigReal v = cached_moment(spec, prec, cache);
  std::cout << integrand_description(spec) << "\n" << show(v, c.precision_digits) << "\n";
  return 0;
}

struct FormArgs {
  std::string eta;
  int cm = 0;
  std::string xpoly;
  std::vector<std::string> eis;
  std::string coeffs;
  std::string gamma;
  int k = 0;
  int s = 0;
};

int cmd_lvalue(const Globals& g, const FormArgs& a) {
  RunConfig c = resolve(g);
  Precision prec = Precision::from_digits(c.precision_digits);
  int chosen = !a.eta.empty() + (a.cm != 0) + !a.xpoly.empty() + !a.eis.empty();
  if (chosen != 1) throw CLI::ValidationError("give exactly one of --eta, --cm, --xpoly, --eis");

  if (a.cm != 0) {
    if (a.k == 0) throw CLI::ValidationError("--cm needs --k");
    CmCheck r = cm_lvalue_check(a.cm, a.k, a.s, prec);
    std::cout << "L(f," << a.s << ") = " << show(r.lvalue, c.precision_digits) << "\n";
    std::cout << "ratio L/(pi^s |D|^((s-1)/2) Omega_" << r.D << "^(k-1)) = " << r.ratio.to_string(30) << "\n";
    if (r.zero)
      std::cout << "L-value vanishes\n";
    else if (r.rational)
      std::cout << "recognized rational: " << r.rational->get_str() << "\n";
    else {
      std::cout << r.residual << "\n";
      if (r.sqrt2_multiple) std::cout << "ratio = sqrt2*(" << r.sqrt2_multiple->get_str() << ")\n";
      return 1;
    }
    return 0;
  }

  std::optional<FormHandle> f;
  std::optional<XPoly> poly;
  std::optional<GroupTag> group;
  if (!a.gamma.empty()) group = GroupTag::parse(a.gamma);

  if (!a.eta.empty()) {
    std::vector<std::pair<long, long>> factors;
    for (const auto& item : split(a.eta, ',')) {
      auto parts = split(item, ':');
      if (parts.size() != 2) throw CLI::ValidationError("--eta expects m:e[,m:e...]");
      factors.emplace_back(std::stol(parts[0]), std::stol(parts[1]));
    }
    f = FormHandle::eta(factors);
    for (const auto& candidate : GroupTag::all()) {
      if (group && !(*group == candidate)) continue;
      try {
        XPoly p = p_map(f->with_group(candidate));
        poly = p;
        group = candidate;
        break;
      } catch (const DomainError&) {
      }
    }
  } else if (!a.xpoly.empty()) {
    if (!group || a.k == 0) throw CLI::ValidationError("--xpoly needs --gamma and --k");
    std::vector<Sqrt2Elem> cs;
    for (const auto& t : split(a.xpoly, ',')) cs.push_back(parse_sqrt2(t));
    poly = XPoly(cs);
    f = p_inverse(*poly, a.k, *group);
  } else {
    if (!group) throw CLI::ValidationError("--eis needs --gamma");
    EisensteinCombination combo;
    int k = 0;
    for (const auto& d : a.eis) {
      auto parts = split(d, ',');
      if (parts.size() != 4) throw CLI::ValidationError("--eis expects k,psi,phi,t");
      int kk = std::stoi(parts[0]);
      if (k != 0 && kk != k) throw CLI::ValidationError("all --eis terms need the same weight");
      k = kk;
      combo.terms.push_back({CharacterTag::from_discriminant(std::stoi(parts[1])),
                             CharacterTag::from_discriminant(std::stoi(parts[2])), std::stol(parts[3])});
    }
    auto cs = split(a.coeffs, ',');
    if (cs.empty()) cs.assign(combo.terms.size(), "1");
    if (cs.size() != combo.terms.size()) throw CLI::ValidationError("--coeffs must match the number of --eis terms");
    for (const auto& t : cs) combo.coeffs.push_back(parse_sqrt2(t));
    combo.level = group->eisenstein_level();
    combo.inflation = group->inflation();
    f = FormHandle::eisenstein(*group, k, combo);
    try {
      poly = p_map(*f);
    } catch (const DomainError&) {
    }
  }

  BigReal via_qexp = lvalue_via_qexp(*f, a.s, prec);
  std::cout << f->describe() << "\n";
  std::cout << "L(f," << a.s << ") via q-expansion: " << show(via_qexp, c.precision_digits) << "\n";
  if (poly && group) {
    try {
      BigReal via_moment = lvalue_via_moment(*poly, f->weight(), a.s, *group, prec);
      std::cout << "L(f," << a.s << ") via moment:      " << show(via_moment, c.precision_digits) << "\n";
      std::cout << "difference: " << abs(via_qexp.value() - via_moment.value()).to_string(3) << "\n";
    } catch (const DomainError& e) {
      std::cout << "moment route unavailable: " << e.what() << "\n";
    }
  }
  return 0;
}

int cmd_rank(const Globals& g, const std::string& gamma, int k, bool with_constants) {
  RunConfig c = resolve(g);
  if (g.digits == 0 && g.config_file.empty()) c.precision_digits = 200;
  if (k < 3) throw CLI::ValidationError("k must be at least 3");
  GroupTag group = GroupTag::parse(gamma);
  Precision prec = Precision::from_digits(c.precision_digits);
  ConstantCache cache(c.cache_dir);
  Field field = group.over_sqrt2() ? Field::Sqrt2 : Field::Rational;

  std::vector<std::string> labels;
  for (int s = 1; s < k; ++s)
    for (long i = 0; i <= max_moment_index(group, k); ++i)
      labels.push_back("M(" + std::to_string(s) + "," + std::to_string(i) + ")");
  if (with_constants)
    for (const auto& cc : closed_constants(group, k, prec)) labels.push_back(cc.label);

  ValueSource values = [&](Precision p) {
    std::vector<BigReal> out;
    const MomentFamily& fam = moment_family(group, k, p);
    for (std::size_t j = 0; j < fam.specs.size(); ++j) {
      const MomentSpec& spec = fam.specs[j];
      std::string key = "M[" + group.name() + "," + std::to_string(k) + "," + std::to_string(spec.s) + "," +
                        std::to_string(spec.i) + "]";
      if (!cache.lookup(key, p)) cache.store(key, fam.values[j], spec.to_json());
      out.push_back(fam.values[j]);
    }
    if (with_constants)
      for (const auto& cc : closed_constants(group, k, p)) out.push_back(cc.value);
    return out;
  };
  long bound = dimension_bound(group, k);
  // heights the precision can resolve for a basis of the expected size
  long width = (bound + 1) * (field == Field::Sqrt2 ? 2 : 1);
  long exponent = std::min<long>(field == Field::Sqrt2 ? 9 : 12, std::max<long>(2, (c.precision_digits - 20) / width));
  mpz_class height;
  mpz_ui_pow_ui(height.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
  RankResult r = numeric_rank(values, field, prec, height);

  std::cout << group.name() << " k=" << k << (with_constants ? " with constants" : "") << " at "
            << c.precision_digits << " digits\n";
  std::cout << "values:";
  for (const auto& l : labels) std::cout << " " << l;
  std::cout << "\n";
  for (const auto& rel : r.relations) {
    std::cout << "relation:";
    bool first = true;
    for (std::size_t j = 0; j < rel.coeffs.size(); ++j) {
      if (rel.coeffs[j].is_zero()) continue;
      std::cout << (first ? " " : " + ") << "(" << rel.coeffs[j].to_string() << ")*" << labels[j];
      first = false;
    }
    std::cout << " = 0" << (rel.certified ? "  [certified]" : "  [uncertified]") << "\n";
  }
  if (r.verified)
    std::cout << "rank " << r.rank << " <= bound " << bound << (r.rank <= bound ? "" : "  VIOLATED") << "\n";
  else
    std::cout << "rank inconclusive (at most " << r.rank << " with relation height <= 10^" << exponent
              << "), bound " << bound << "; raise --prec\n";
  if (!r.note.empty()) std::cout << "note: " << r.note << "\n";
  if (!r.verified) return 3;
  return r.rank <= bound ? 0 : 1;
}

int cmd_verify(const Globals& g, const std::vector<std::string>& suites) {
  RunConfig c = resolve(g);
  if (!suites.empty()) c.suites = suites;
  c.validate();
  std::vector<CheckRow> rows;
  for (const auto& s : c.suites) {
    auto part = run_suite(s, c);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::cout << format_rows(rows, c.format);
  return exit_code_for(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-precision moments of elliptic integrals, L-values and integer relations"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_file, "key = value configuration file");
  app.add_option("--prec", g.digits, "working precision in decimal digits");
  app.add_option("--format", g.format, "report format: json, csv or text");
  app.add_option("--cache-dir", g.cache_dir, "directory of the constant cache");
  app.add_option("--jobs", g.jobs, "worker threads (0 = hardware)");

  std::string gamma;
  int k = 0, s = 0;
  long i = 0;
  auto* moment = app.add_subcommand("moment", "evaluate one moment integral");
  moment->add_option("--gamma", gamma, "g1_4, g4 or g1_8")->required();
  moment->add_option("--k", k)->required();
  moment->add_option("--s", s)->required();
  moment->add_option("--i", i)->required();

  FormArgs form;
  auto* lvalue = app.add_subcommand("lvalue", "L-value of a form at an integer point");
  lvalue->add_option("--eta", form.eta, "eta quotient m:e[,m:e...]");
  lvalue->add_option("--cm", form.cm, "CM newform of level 4, 8 or 16");
  lvalue->add_option("--xpoly", form.xpoly, "coefficients of a polynomial in X, lowest first");
  lvalue->add_option("--eis", form.eis, "Eisenstein term k,psi,phi,t (repeatable)");
  lvalue->add_option("--coeffs", form.coeffs, "coefficients of the --eis terms");
  lvalue->add_option("--gamma", form.gamma, "group for --xpoly and --eis");
  lvalue->add_option("--k", form.k, "weight for --cm and --xpoly");
  lvalue->add_option("--s", form.s)->required();

  bool with_constants = false;
  auto* rank = app.add_subcommand("rank", "numeric rank of a moment family");
  rank->add_option("--gamma", gamma, "g1_4, g4 or g1_8")->required();
  rank->add_option("--k", k)->required();
  rank->add_flag("--with-constants", with_constants, "append the closed constants of the weight");

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suites, "examples, theorem2, eisenstein, cm, appendix, properties or all");

  for (auto* sub : {moment, lvalue, rank, verify}) {
    sub->add_option("--prec", g.digits, "working precision in decimal digits");
    sub->add_option("--format", g.format, "report format: json, csv or text");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), kUsageError);
  }

  try {
    if (*moment) return cmd_moment(g, gamma, k, s, i);
    if (*lvalue) return cmd_lvalue(g, form);
    if (*rank) return cmd_rank(g, gamma, k, with_constants);
    if (*verify) return cmd_verify(g, suites);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kUsageError;
}
