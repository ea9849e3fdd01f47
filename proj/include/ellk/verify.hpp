#pragma once

#include "ellk/modular.hpp"
#include "ellk/relations.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ellk {

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus s);

struct CheckRow {
  std::string item;
  CheckStatus status = CheckStatus::Fail;
  std::string lhs;
  std::string rhs;
  std::string abs_diff;
  long prec_bits = 0;
  double runtime_ms = 0;
  std::string note;

  nlohmann::json to_json() const;
};

enum class OutputFormat { Json, Csv, Text };
OutputFormat parse_format(const std::string& name);

struct RunConfig {
  long precision_digits = 60;
  std::string cache_dir;
  std::vector<std::string> suites{"all"};
  OutputFormat format = OutputFormat::Text;
  unsigned parallelism = 0;

  // cache_dir from ELLK_CACHE_DIR, else $HOME/.cache/ellk
  static RunConfig defaults();
  // key = value lines; '#' starts a comment
  void apply_file(const std::string& path);
  void validate() const;
};

const std::vector<std::string>& suite_names();
std::vector<CheckRow> run_suite(const std::string& suite, const RunConfig& config);
// 0 all pass, 1 any failure, 3 inconclusive without failures
int exit_code_for(const std::vector<CheckRow>& rows);
std::string format_rows(const std::vector<CheckRow>& rows, OutputFormat format);

// Append-only JSON-lines store of computed constants.
class ConstantCache {
 public:
  explicit ConstantCache(std::string dir);
  // A stored value is used only if it was computed with at least prec bits.
  std::optional<BigReal> lookup(const std::string& key, Precision prec) const;
  // fields: extra members of the record, e.g. the moment coordinates
  void store(const std::string& key, const BigReal& value, const nlohmann::json& fields = {});
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Named constants: "pi^n", "zeta(n)", "L_D(n)", "pi^a*Omega_D^b", "M[g,k,s,i]", "x1", "x2".
BigReal constant_value(const std::string& label, Precision prec);

struct MomentTerm {
  Sqrt2Elem coeff;
  int s;
  XPoly h;
};
struct ConstantTerm {
  Sqrt2Elem coeff;
  std::string label;
};

// Σ coeff·∫K^{k−s−1}K'^{s−1}h(X)/w(X)dm = Σ coeff·constant.
struct Identity {
  std::string item;
  GroupTag group;
  int k;
  std::vector<MomentTerm> lhs;
  std::vector<ConstantTerm> rhs;
  long relation_digits;  // precision needed to rediscover it by PSLQ
};

const std::vector<Identity>& identity_registry();
std::vector<Identity> identities_for(Group g);

BigReal identity_lhs(const Identity& id, Precision prec);
BigReal identity_rhs(const Identity& id, Precision prec);
CheckRow check_identity(const Identity& id, Precision prec);

struct Rediscovery {
  RelationSearch search;
  bool matches = false;  // proportional to the displayed relation
  CheckRow row;
};
// PSLQ on [bare moments…, constants…]; compares with the displayed coefficients up to a scalar.
Rediscovery rediscover_identity(const Identity& id, Precision prec, const mpz_class& max_height);

// Rows of the individual suites.
std::vector<CheckRow> example_rows(Precision prec);
std::vector<CheckRow> bridge_rows(Precision prec);
std::vector<CheckRow> eisenstein_rows(Precision prec);
std::vector<CheckRow> cm_rows(Precision prec);
std::vector<CheckRow> appendix_rows(Precision prec);
std::vector<CheckRow> property_rows(Precision prec);

}  // namespace ellk
