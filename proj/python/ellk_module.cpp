#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "ellk/relations.hpp"
#include "ellk/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace ellk;

namespace {

Precision digits(long d) {
  if (d < 15) throw DomainError("digits must be at least 15");
  return Precision::from_digits(d);
}

std::string show(const BigReal& x, long d) { return x.value().to_string(static_cast<int>(d)); }

std::optional<std::string> show(const std::optional<mpq_class>& q) {
  if (!q) return std::nullopt;
  return q->get_str();
}

py::dict row_dict(const CheckRow& r) {
  py::dict d;
  d["item"] = r.item;
  d["status"] = to_string(r.status);
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["abs_diff"] = r.abs_diff;
  d["prec_bits"] = r.prec_bits;
  d["runtime_ms"] = r.runtime_ms;
  d["note"] = r.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ellk, m) {
  m.doc() = "High-precision moments of complete elliptic integrals and L-values of modular forms";

  m.def("suite_names", &suite_names);

  m.def(
      "dimension_bound", [](const std::string& gamma, int k) { return dimension_bound(GroupTag::parse(gamma), k); },
      py::arg("gamma"), py::arg("k"));

  m.def(
      "moment",
      [](const std::string& gamma, int k, int s, long i, long d) {
        return show(compute_moment({GroupTag::parse(gamma), k, s, i}, digits(d)), d);
      },
      py::arg("gamma"), py::arg("k"), py::arg("s"), py::arg("i"), py::arg("digits") = 30,
      "Moment by quadrature, as a decimal string.");

  m.def(
      "moment_via_lvalue",
      [](const std::string& gamma, int k, int s, long i, long d) {
        return show(moment_via_lvalue({GroupTag::parse(gamma), k, s, i}, digits(d)), d);
      },
      py::arg("gamma"), py::arg("k"), py::arg("s"), py::arg("i"), py::arg("digits") = 30);

  m.def(
      "lvalue_eta",
      [](std::vector<std::pair<long, long>> factors, int s, long d) {
        return show(lvalue_via_qexp(FormHandle::eta(std::move(factors)), s, digits(d)), d);
      },
      py::arg("factors"), py::arg("s"), py::arg("digits") = 30,
      "L(prod eta(m tau)^e, s); factors are (m, e) pairs.");

  m.def(
      "cm_check",
      [](int level, int k, int s, long d) {
        CmCheck c = cm_lvalue_check(level, k, s, digits(d));
        py::dict out;
        out["lvalue"] = show(c.lvalue, d);
        out["ratio"] = show(c.ratio, d);
        out["rational"] = show(c.rational);
        out["sqrt2_multiple"] = show(c.sqrt2_multiple);
        return out;
      },
      py::arg("level"), py::arg("k"), py::arg("s"), py::arg("digits") = 60);

  m.def(
      "numeric_rank",
      [](const std::string& gamma, int k, long d, int height_digits) {
        GroupTag g = GroupTag::parse(gamma);
        mpz_class h;
        mpz_ui_pow_ui(h.get_mpz_t(), 10, height_digits);
        RankResult r = numeric_rank([&](Precision p) { return moment_family(g, k, p).values; },
                                    g.over_sqrt2() ? Field::Sqrt2 : Field::Rational, digits(d), h);
        py::dict out;
        out["rank"] = r.rank;
        out["bound"] = dimension_bound(g, k);
        out["verified"] = r.verified;
        std::vector<std::string> rels;
        for (const auto& rel : r.relations) rels.push_back(rel.to_string());
        out["relations"] = rels;
        return out;
      },
      py::arg("gamma"), py::arg("k"), py::arg("digits") = 200, py::arg("height_digits") = 12);

  m.def(
      "run_suite",
      [](const std::string& suite, long d) {
        RunConfig c = RunConfig::defaults();
        c.precision_digits = d;
        std::vector<CheckRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_suite(suite, c);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_dict(r));
        return out;
      },
      py::arg("suite"), py::arg("digits") = 60);
}
