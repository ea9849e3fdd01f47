#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

std::filesystem::path scratch() {
  static std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("ellk-cli-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(d);
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  std::string cmd = "ELLK_CACHE_DIR='" + (scratch() / "cache").string() + "' '" ELLK_CLI_PATH "' " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("moment") {
  Run r = run("moment --gamma g1_4 --k 4 --s 1 --i 0 --prec 50");
  CHECK(r.code == 0);
  CHECK(has(r.out, "4.20719916105857999889908356529"));
  // the second call is answered from the cache
  std::ifstream cache(scratch() / "cache" / "constants.jsonl");
  std::string line;
  REQUIRE(std::getline(cache, line));
  auto j = nlohmann::json::parse(line);
  CHECK(j["gamma"] == "g1_4");
  CHECK(j["k"] == 4);
  CHECK(j.contains("prec_bits"));
  CHECK(j.contains("value_decimal"));
  Run again = run("moment --gamma g1_4 --k 4 --s 1 --i 0 --prec 40");
  CHECK(again.code == 0);
  CHECK(has(again.out, "4.2071991610585799988990835652"));

  Run g4 = run("moment --gamma g4 --k 3 --s 1 --i 0 --prec 40");
  CHECK(g4.code == 0);
  CHECK(has(g4.out, "3.7367082281193205151224957173"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("moment --gamma g1_4 --k 4 --s 1 --i 3").code == 2);
  CHECK(run("moment --gamma g7 --k 4 --s 1 --i 0").code == 2);
  CHECK(run("moment --gamma g1_4 --k 4").code == 2);
  CHECK(run("moment --gamma g1_4 --k 4 --s 1 --i 0 --prec 10").code == 2);
  CHECK(run("verify --suite nonsense").code == 2);
  CHECK(run("lvalue --s 2").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("lvalue") {
  Run eta = run("lvalue --eta 2:12 --s 5 --prec 30");
  CHECK(eta.code == 0);
  CHECK(has(eta.out, "via q-expansion: 9.62949768420834229257806085"));
  CHECK(has(eta.out, "via moment:      9.62949768420834229257806085"));
  Run level8 = run("lvalue --eta 2:4,4:4 --s 3 --prec 30");
  CHECK(level8.code == 0);
  CHECK(has(level8.out, "8.74695377085079044944594728"));
  Run cm = run("lvalue --cm 8 --k 3 --s 2 --prec 40");
  CHECK(cm.code == 0);
  CHECK(has(cm.out, "recognized rational: 1/12"));
  Run xp = run("lvalue --xpoly 0,1,-1 --gamma g1_4 --k 4 --s 2 --prec 30");
  CHECK(xp.code == 0);
  CHECK(has(xp.out, "4.93480220054467930941724549"));  // π²/2
  Run eis = run("lvalue --gamma g1_4 --eis 4,1,1,1 --eis 4,1,1,2 --eis 4,1,1,4 --coeffs 1,-17,16 --s 2 --prec 30");
  CHECK(eis.code == 0);
  CHECK(has(eis.out, "via q-expansion"));
  // a form that does not vanish at both cusps
  Run bad = run("lvalue --xpoly 1 --gamma g1_4 --k 4 --s 2 --prec 30");
  CHECK(bad.code != 0);
}

TEST_CASE("rank") {
  Run r = run("rank --gamma g1_4 --k 4 --with-constants --prec 60");
  CHECK(r.code == 0);
  CHECK(has(r.out, "rank 2 <= bound 2"));
  Run r6 = run("rank --gamma g1_4 --k 6 --with-constants --prec 100");
  CHECK(r6.code == 0);
  CHECK(has(r6.out, "rank 4 <= bound 4"));
  CHECK(has(r6.out, "(93)*zeta(5)"));
  CHECK(has(r6.out, "(1)*pi^5"));
  Run low = run("rank --gamma g1_8 --k 5 --prec 40");
  CHECK(low.code == 3);
  CHECK(has(low.out, "inconclusive"));
}

TEST_CASE("verify") {
  Run a = run("verify --suite appendix --format json --prec 30");
  CHECK(a.code == 0);
  std::istringstream lines(a.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    for (const char* key : {"item", "status", "lhs", "rhs", "abs_diff", "prec_bits", "runtime_ms"}) CHECK(j.contains(key));
    CHECK(j["status"] == "pass");
    ++rows;
  }
  CHECK(rows > 10);

  Run csv = run("--format csv verify --suite appendix --prec 30");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("item,status", 0) == 0);

  // level 8, weight 5 CM ratios are √2 times rationals, so the suite reports failures
  Run cm = run("verify --suite cm --prec 40");
  CHECK(cm.code == 1);
  CHECK(has(cm.out, "sqrt2*(1/2)"));
}

TEST_CASE("configuration file") {
  auto path = scratch() / "run.conf";
  std::ofstream(path) << "# settings\nprecision_digits = 35\nformat = json\nsuites = appendix\n";
  Run r = run("--config '" + path.string() + "' verify");
  CHECK(r.code == 0);
  CHECK(has(r.out, "\"prec_bits\":"));
  CHECK(has(r.out, "\"status\":\"pass\""));
  std::ofstream(path) << "precision_digits = 12\n";
  CHECK(run("--config '" + path.string() + "' verify --suite appendix").code == 2);
}
