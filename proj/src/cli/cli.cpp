#include "polarcalc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"

#include "polarcalc/harness.hpp"
#include "polarcalc/volume.hpp"

namespace polarcalc::cli {
namespace {

struct RunConfig {
  std::string suite;
  std::vector<int> dims{2};
  std::vector<std::string> ps{"1", "2", "inf"};
  int trials = 10;
  std::uint64_t mc_samples = 100000;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::string recipe = "centered_polar_pair";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Exponent> exponents(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw UsageError("--p needs at least one exponent");
  std::vector<Exponent> out;
  for (const auto& t : tokens) {
    try {
      out.push_back(Exponent::parse(t));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.dims.empty()) throw UsageError("--dim needs at least one dimension");
  for (int n : c.dims) {
    if (n < 1 || n > 4) throw UsageError("dimensions must lie in 1..4");
  }
  if (c.trials < 1) throw UsageError("--trials must be at least 1");
  if (c.mc_samples < 1000) throw UsageError("--mc-samples must be at least 1000");
}

void apply_seed_override(RunConfig& c) {
  if (const char* env = std::getenv("POLARCALC_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("POLARCALC_SEED must be a non-negative integer");
    c.seed = v;
  }
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + c.output);
  file << text;
}

int verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto names = harness::suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end()) {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  if (c.format != "json" && c.format != "csv") throw UsageError("--format must be json or csv");
  harness::SuiteConfig s;
  s.suite = c.suite;
  s.dims = c.dims;
  s.ps = exponents(c.ps);
  s.trials = c.trials;
  s.samples = c.mc_samples;
  s.seed = c.seed;
  const auto reports = harness::run_suite(s);
  const auto rows = harness::summarize(reports);
  emit(c, c.format == "json" ? harness::reports_jsonl(reports) : harness::summary_csv(rows), out);

  int fails = 0;
  for (const auto& r : rows) fails += r.fail;
  if (!c.output.empty() || c.format == "json") err << harness::summary_csv(rows);
  return fails == 0 ? kExitOk : kExitFail;
}

// Observed |(K ∩_p L)°||(K +_p (-L))°| / (|K°||L°|) for L = K symmetric,
// against the lower constant Gamma(1+n/p)^2 / Gamma(1+2n/p).
int sweep(const RunConfig& c, std::ostream& out) {
  const auto ps = exponents(c.ps);
  std::ostringstream os;
  os.precision(10);
  os << "p\tn\tcheck_id\tmin_ratio\tbound\n";
  int fails = 0;
  for (int n : c.dims) {
    for (Exponent p : ps) {
      const double bound = volume::gamma_ratio(n, p);
      double lowest = std::numeric_limits<double>::infinity();
      for (int trial = 0; trial < c.trials; ++trial) {
        const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(n * 1000 + trial));
        const auto k = harness::symmetric_body(n, 2 * n + 2, seed);
        const auto r = harness::check_rspolar(k, k, p, harness::Budget{c.mc_samples, seed});
        if (r.verdict == harness::Verdict::Fail) ++fails;
        lowest = std::min(lowest, r.ratio * bound);
      }
      os << p.to_string() << '\t' << n << "\trspolar\t" << lowest << '\t' << bound << '\n';
    }
  }
  emit(c, os.str(), out);
  return fails == 0 ? kExitOk : kExitFail;
}

int show(const RunConfig& c, std::ostream& out) {
  nlohmann::json j;
  const int n = c.dims.front();
  const int m = 2 * n + 2;
  if (c.recipe == "centered_polar_pair") {
    j = harness::centered_polar_pair(n, m, c.seed).instance;
  } else if (c.recipe == "general_pair") {
    j = harness::general_pair(n, m, c.seed).instance;
  } else if (c.recipe == "centered_pair") {
    j = harness::centered_pair(n, m, c.seed).instance;
  } else if (c.recipe == "simplex") {
    j = {{"recipe", "simplex"}, {"n", n}, {"K", geometry::to_json(harness::simplex(n, true))}};
  } else if (c.recipe == "symmetric_body") {
    j = {{"recipe", "symmetric_body"},
         {"n", n},
         {"seed", c.seed},
         {"K", geometry::to_json(harness::symmetric_body(n, m, c.seed))}};
  } else {
    throw UsageError("unknown recipe '" + c.recipe + "'");
  }
  emit(c, j.dump(2) + "\n", out);
  return kExitOk;
}

void common_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--dim", c.dims, "Dimensions (comma separated)")->delimiter(',');
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--output", c.output, "Output file (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Convex-geometry calculator and inequality verification harness", "polarcalc"};
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "Run a check suite and write reports");
  verify_cmd->add_option("--suite", c.suite, "classical, theorems or lemmas")->required();
  common_options(verify_cmd, c);
  verify_cmd->add_option("--p", c.ps, "Exponents (comma separated, 'inf' allowed)")->delimiter(',');
  verify_cmd->add_option("--trials", c.trials, "Random instances per configuration");
  verify_cmd->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples per volume");
  verify_cmd->add_option("--format", c.format, "json (one report per line) or csv (summary)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Observed ratios against the p-dependent constant (TSV)");
  common_options(sweep_cmd, c);
  sweep_cmd->add_option("--p", c.ps, "Exponents (comma separated, 'inf' allowed)")->delimiter(',');
  sweep_cmd->add_option("--trials", c.trials, "Random instances per row");
  sweep_cmd->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples per volume");

  auto* show_cmd = app.add_subcommand("show", "Print a generated instance as JSON");
  common_options(show_cmd, c);
  show_cmd->add_option("--recipe", c.recipe,
                       "centered_polar_pair, general_pair, centered_pair, simplex or symmetric_body");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_seed_override(c);
    validate(c);
    if (verify_cmd->parsed()) return verify(c, out, err);
    if (sweep_cmd->parsed()) return sweep(c, out);
    return show(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace polarcalc::cli
