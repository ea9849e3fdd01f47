#include "ellk/lvalue.hpp"
#include "ellk/moments.hpp"
#include "ellk/verify.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace ellk;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  if (!out.ok) ++failures;
  std::printf("%s C%d %s (%.1f s)%s\n", out.ok ? "PASS" : "FAIL", n, title.c_str(), seconds_since(t0),
              out.detail.str().c_str());
  std::fflush(stdout);
}

const Identity& identity(const std::string& prefix) {
  for (const auto& id : identity_registry())
    if (id.item.rfind(prefix, 0) == 0) return id;
  throw std::runtime_error("no identity " + prefix);
}

void rows_pass(Outcome& out, const std::vector<CheckRow>& rows) {
  out.require(!rows.empty(), "no rows");
  long passed = 0;
  for (const auto& r : rows) {
    if (r.status == CheckStatus::Pass)
      ++passed;
    else
      out.require(false, r.item + ": " + to_string(r.status) + (r.note.empty() ? "" : " (" + r.note + ")"));
  }
  out.detail << " " << passed << "/" << rows.size() << " rows";
}

void identity_pass(Outcome& out, const std::string& prefix, Precision prec, double budget_s = 0) {
  auto t0 = Clock::now();
  CheckRow r = check_identity(identity(prefix), prec);
  double s = seconds_since(t0);
  out.require(r.status == CheckStatus::Pass, r.item + " |diff| " + r.abs_diff);
  if (budget_s > 0) out.require(s < budget_s, prefix + " took " + std::to_string(s) + " s");
}

mpz_class height(int exponent) {
  mpz_class h;
  mpz_ui_pow_ui(h.get_mpz_t(), 10, exponent);
  return h;
}

void expression_matches(Outcome& out, const Identity& id, const std::vector<mpq_class>& expected, Precision prec) {
  ValueSource src = [&id](Precision p) {
    std::vector<BigReal> v{identity_lhs(id, p)};
    for (const auto& t : id.rhs) v.push_back(constant_value(t.label, p));
    return v;
  };
  auto e = express_in_basis(src, Field::Rational, prec, height(8));
  out.require(e.has_value(), id.item + ": no expression found");
  if (!e) return;
  bool same = e->coeffs.size() == expected.size();
  for (std::size_t j = 0; same && j < expected.size(); ++j) same = e->coeffs[j] == Sqrt2Elem(expected[j]);
  std::string got;
  for (const auto& c : e->coeffs) got += (got.empty() ? "" : ", ") + c.to_string();
  out.detail << " (" << got << ")";
  out.require(same, id.item + ": coefficients differ");
}

void rediscover_group(Outcome& out, Group g, long min_digits, int height_exp) {
  for (const auto& id : identities_for(g)) {
    Precision p = Precision::from_digits(std::max(min_digits, id.relation_digits));
    Rediscovery r = rediscover_identity(id, p, height(height_exp));
    out.require(r.row.status == CheckStatus::Pass, id.item + ": " + to_string(r.row.status) + " got " + r.row.lhs);
  }
}

}  // namespace

int main() {
  const GroupTag G14 = GroupTag::of(Group::Gamma1_4), G4 = GroupTag::of(Group::Gamma4),
                 G8 = GroupTag::of(Group::Gamma1_8);
  const Precision d50 = Precision::from_digits(50), d60 = Precision::from_digits(60),
                  d100 = Precision::from_digits(100), d150 = Precision::from_digits(150),
                  d200 = Precision::from_digits(200);

  criterion(1, "weight 4 level 4: int K^2 = 7 zeta(3)/2, int K K' = pi^3/8 at 60 digits, < 5 s each", [&](Outcome& o) {
    identity_pass(o, "g1_4 k=4: int K^2 dm", d60, 5);
    identity_pass(o, "g1_4 k=4: int K K' dm", d60, 5);
  });

  criterion(2, "weight 5 level 4: K^3 and K^2 K' moments against pi^4 Omega^4, numeric rank 1", [&](Outcome& o) {
    identity_pass(o, "g1_4 k=5: int K^3 dm", d60);
    identity_pass(o, "g1_4 k=5: int K^2 K' dm", d60);
    const MomentFamily& fam = moment_family(G14, 5, d100);
    RankResult rank = numeric_rank([&](Precision p) { return moment_family(G14, 5, p).values; }, Field::Rational, d100,
                                   height(12));
    o.detail << " rank " << rank.rank << " of " << fam.values.size();
    o.require(rank.verified && rank.rank == 1, "rank " + std::to_string(rank.rank));
  });

  criterion(3, "weight 6 level 4: 93 zeta(5)/8, pi^5/64, int K^4 = 24 L(eta(2t)^12, 5)", [&](Outcome& o) {
    identity_pass(o, "g1_4 k=6: int K^4 (2m-1) dm", d60);
    identity_pass(o, "g1_4 k=6: int K^3 K' (2m-1) dm", d60);
    BigReal lhs = compute_moment({G14, 6, 1, 0}, d60);
    BigReal L = lvalue_via_qexp(FormHandle::eta({{2, 12}}), 5, d60);
    o.require(ellk_test::agree(lhs, L * mpq_class(24), 50), "24 L(eta(2t)^12, 5) mismatch");
  });

  criterion(4, "weight 7 level 4 integrals expressed over {x1, x2} at 100 digits", [&](Outcome& o) {
    expression_matches(o, identity("g1_4 k=7: int K^4 K' dm"), {mpq_class(17, 30), mpq_class(11, 120)}, d100);
    expression_matches(o, identity("g1_4 k=7: int K^3 K'^2 m dm"), {mpq_class(-2, 15), mpq_class(31, 60)}, d100);
  });

  criterion(5, "weight 9 level 4 integral over {x1, x2, pi^8 Omega^8} at 150 digits", [&](Outcome& o) {
    expression_matches(o, identity("g1_4 k=9"), {mpq_class(4, 21), mpq_class(16, 35), mpq_class(-432, 175)}, d150);
  });

  criterion(6, "Gamma(4) identities rediscovered and certified, < 10 min", [&](Outcome& o) {
    auto t0 = Clock::now();
    rediscover_group(o, Group::Gamma4, 60, 10);
    double s = seconds_since(t0);
    o.require(s < 600, "took " + std::to_string(s) + " s");
  });

  criterion(7, "Gamma1(8) Z[sqrt2] relations rediscovered and certified at 200 digits", [&](Outcome& o) {
    rediscover_group(o, Group::Gamma1_8, 200, 10);
  });

  criterion(8, "moments by quadrature agree with the L-value route at 50 digits",
            [&](Outcome& o) { rows_pass(o, bridge_rows(d50)); });

  criterion(9, "numeric rank <= dimension bound for all families at 200 digits", [&](Outcome& o) {
    const std::vector<std::pair<GroupTag, std::vector<int>>> families = {
        {G14, {4, 5, 6, 7, 8, 9}}, {G4, {3, 4, 5}}, {G8, {3, 4, 5}}};
    for (const auto& [g, ks] : families) {
      for (int k : ks) {
        Field field = g.over_sqrt2() ? Field::Sqrt2 : Field::Rational;
        long bound = dimension_bound(g, k);
        // incremental PSLQ sees at most bound + 1 values at a time
        long width = (bound + 1) * (g.over_sqrt2() ? 2 : 1);
        long exponent = std::min<long>(g.over_sqrt2() ? 9 : 12, std::max<long>(2, (200 - 20) / width));
        RankResult r = numeric_rank([&](Precision p) { return moment_family(g, k, p).values; }, field, d200,
                                    height(static_cast<int>(exponent)));
        o.detail << " " << g.name() << "/" << k << ":" << r.rank << "<=" << bound << (r.verified ? "" : "?");
        o.require(r.rank <= bound, g.name() + " k=" + std::to_string(k) + " exceeds bound");
        if (g.label == Group::Gamma1_4 && k == 5) o.require(r.verified && r.rank == 1, "g1_4 k=5 rank not 1");
      }
    }
  });

  criterion(10, "level 4 Eisenstein L-values in span(pi^(k-1), zeta(k-1)) and factored form, k = 4, 6, 8",
            [&](Outcome& o) { rows_pass(o, eisenstein_rows(d60)); });

  criterion(11, "CM L-value ratios are rationals of height < 10^6 at 100 digits",
            [&](Outcome& o) { rows_pass(o, cm_rows(d100)); });

  criterion(12, "eta(2t)^12 at s = 5 three ways, coefficient closed form, supercongruences", [&](Outcome& o) {
    auto rows = appendix_rows(d60);
    rows_pass(o, rows);
    for (const auto& r : rows)
      if (r.item.find("p=13") != std::string::npos) o.require(r.runtime_ms < 60000, "p = 13 over 60 s");
  });

  criterion(13, "property suites: planted PSLQ, precision doubling, invariants, dimensions",
            [&](Outcome& o) { rows_pass(o, property_rows(d60)); });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
