#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "polarcalc/cli.hpp"

using polarcalc::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

const std::vector<std::string> kSmallLemmas = {"verify", "--suite", "lemmas", "--dim", "2", "--p", "1",
                                               "--trials", "1", "--mc-samples", "5000"};

}  // namespace

TEST_CASE("usage errors exit with 2") {
  ::unsetenv("POLARCALC_SEED");
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"verify", "--suite", "nope"}).code == 2);
  CHECK(call({"verify"}).code == 2);
  CHECK(call({"verify", "--suite", "lemmas", "--dim", "5"}).code == 2);
  CHECK(call({"verify", "--suite", "lemmas", "--trials", "0"}).code == 2);
  CHECK(call({"verify", "--suite", "lemmas", "--mc-samples", "100"}).code == 2);
  CHECK(call({"verify", "--suite", "lemmas", "--format", "xml"}).code == 2);
  CHECK(call({"verify", "--suite", "lemmas", "--p", "abc"}).code == 2);
  CHECK(call({"sweep", "--p", ""}).code == 2);
  CHECK(call({"sweep", "--p"}).code == 2);
  CHECK(call({"show", "--recipe", "teapot"}).code == 2);
  const auto help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("verify writes one report per line and is reproducible") {
  ::unsetenv("POLARCALC_SEED");
  const auto a = call(kSmallLemmas);
  const auto b = call(kSmallLemmas);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto lines = split_lines(a.out);
  REQUIRE(!lines.empty());
  for (const auto& line : lines) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["verdict"] != "fail");
  }
  CHECK(a.err.rfind("check_id,n,p,trials", 0) == 0);

  auto csv = kSmallLemmas;
  csv.insert(csv.end(), {"--format", "csv"});
  const auto c = call(csv);
  CHECK(c.code == 0);
  CHECK(c.out.rfind("check_id,n,p,trials,pass,fail,inconclusive,min_ratio,max_ratio\n", 0) == 0);
}

TEST_CASE("output file and seed override") {
  const auto dir = std::filesystem::temp_directory_path() / "polarcalc_cli_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "reports.jsonl";

  ::unsetenv("POLARCALC_SEED");
  auto args = kSmallLemmas;
  args.insert(args.end(), {"--seed", "7", "--output", file.string()});
  REQUIRE(call(args).code == 0);
  const std::string seven = slurp(file);
  CHECK(!seven.empty());

  ::setenv("POLARCALC_SEED", "7", 1);
  auto overridden = kSmallLemmas;
  overridden.insert(overridden.end(), {"--seed", "3"});
  CHECK(call(overridden).out == seven);
  ::setenv("POLARCALC_SEED", "x7", 1);
  CHECK(call(overridden).code == 2);
  ::unsetenv("POLARCALC_SEED");
  CHECK(call(overridden).out != seven);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep emits the lower constant per exponent") {
  ::unsetenv("POLARCALC_SEED");
  const auto r = call({"sweep", "--dim", "2", "--p", "1,2,inf", "--trials", "2", "--mc-samples", "20000"});
  REQUIRE(r.code == 0);
  const auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "p\tn\tcheck_id\tmin_ratio\tbound");
  CHECK(lines[1].rfind("1\t2\trspolar\t", 0) == 0);
  double previous = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i]);
    std::string p, n, id;
    double observed = 0.0, bound = 0.0;
    row >> p >> n >> id >> observed >> bound;
    CHECK(observed >= bound);
    CHECK(bound > previous);
    previous = bound;
    if (p == "1") CHECK(bound == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
    if (p == "inf") CHECK(bound == 1.0);
  }
}

TEST_CASE("show prints generated instances") {
  ::unsetenv("POLARCALC_SEED");
  for (const char* recipe : {"centered_polar_pair", "general_pair", "centered_pair", "simplex", "symmetric_body"}) {
    const auto r = call({"show", "--recipe", recipe, "--dim", "2", "--seed", "5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["K"]["dim"] == 2);
  }
}
