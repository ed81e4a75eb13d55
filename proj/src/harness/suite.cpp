#include <algorithm>
#include <cmath>
#include <functional>

#include "polarcalc/harness.hpp"

namespace polarcalc::harness {
namespace {

using Sink = std::vector<CheckReport>;

// Instances whose randomly drawn data miss a hypothesis are dropped.
void attempt(const std::function<void()>& run) {
  try {
    run();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HypothesisViolated && e.code() != ErrorCode::DegenerateInstance) throw;
  }
}

void tag(CheckReport& r, const nlohmann::json& generator) {
  r.instance["generator"] = generator;
}

void classical(const SuiteConfig& c, Sink& out) {
  for (int n : c.dims) {
    const int m = 2 * n + 2;
    for (int trial = 0; trial < c.trials; ++trial) {
      const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(n * 1000 + trial));
      const Budget b{c.samples, seed};
      attempt([&] {
        const BodyPair pair = general_pair(n, m, seed);
        for (auto r : {check_rs_two_bodies(pair.k, pair.l, Vector::Zero(n), b),
                       check_volume_polars(pair.k, pair.l, b), check_rs_convex_hull(pair.k, pair.l, b)}) {
          tag(r, pair.instance);
          out.push_back(std::move(r));
        }
      });
      attempt([&] {
        const BodyPair pair = centered_pair(n, m, derive_seed(seed, 7));
        CheckReport r = check_milman_pajor(pair.k, pair.l, b);
        tag(r, pair.instance);
        out.push_back(std::move(r));
      });
      attempt([&] {
        const BodyPair pair = general_pair(n, m, derive_seed(seed, 8));
        CheckReport r = check_firey(pair.k, b);
        tag(r, pair.instance);
        out.push_back(std::move(r));
        for (Exponent p : c.ps) {
          CheckReport q = check_bm_dual_p(pair.k, p, b);
          tag(q, pair.instance);
          out.push_back(std::move(q));
        }
      });
      for (FunctionFamily family : {FunctionFamily::Indicator, FunctionFamily::Gaussian}) {
        attempt([&] {
          const FunctionPair pair = function_pair(family, n, derive_seed(seed, 9));
          CheckReport r = check_functional_rs(pair.f, pair.g, b);
          tag(r, pair.instance);
          out.push_back(std::move(r));
        });
      }
    }

    // Equality cases.
    const Budget b{c.samples, derive_seed(c.seed, static_cast<std::uint64_t>(n))};
    const ConvexBody s = simplex(n, false);
    const ConvexBody sc = simplex(n, true);
    const nlohmann::json eq = {{"recipe", "equality"}};
    auto push = [&](CheckReport r) {
      tag(r, eq);
      out.push_back(std::move(r));
    };
    push(check_rs_two_bodies(sc, sc, Vector::Zero(n), b));
    push(check_rs_convex_hull(s, s, b));
    push(check_firey(symmetric_body(n, m, b.seed), b));
    push(check_functional_rs(LogConcaveFn::indicator(sc), LogConcaveFn::indicator(geometry::negate(sc)), b));
  }
}

void theorems(const SuiteConfig& c, Sink& out) {
  const double t = std::exp(-1.0);
  for (int n : c.dims) {
    const int m = 2 * n + 2;
    for (int trial = 0; trial < c.trials; ++trial) {
      const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(n * 1000 + trial));
      const Budget b{c.samples, seed};
      for (Exponent p : c.ps) {
        attempt([&] {
          const BodyPair pair = centered_polar_pair(n, m, seed);
          CheckReport r = check_rspolar(pair.k, pair.l, p, b);
          tag(r, pair.instance);
          out.push_back(std::move(r));
          if (p.is_one()) {
            CheckReport q = check_rspolar_p1(pair.k, pair.l, b);
            tag(q, pair.instance);
            out.push_back(std::move(q));
          }
          if (!p.is_infinite()) {
            for (auto q : {check_projection_section(pair.k, pair.l, p, t, b),
                           check_projection_section_upper(pair.k, pair.l, p, t, b)}) {
              tag(q, pair.instance);
              out.push_back(std::move(q));
            }
          }
        });
        attempt([&] {
          const BodyPair pair = general_pair(n, m, derive_seed(seed, 3));
          CheckReport r = check_rspolar_reverse(pair.k, pair.l, p, b);
          tag(r, pair.instance);
          out.push_back(std::move(r));
        });
      }
      for (FunctionFamily family :
           {FunctionFamily::Gaussian, FunctionFamily::Indicator, FunctionFamily::ExpNegSupport}) {
        attempt([&] {
          const FunctionPair pair = function_pair(family, n, derive_seed(seed, 4));
          CheckReport r = check_reverse_functional_rs(pair.f, pair.g, b);
          tag(r, pair.instance);
          out.push_back(std::move(r));
        });
      }
    }
  }
}

void lemmas(const SuiteConfig& c, Sink& out) {
  for (int n : c.dims) {
    const int m = 2 * n + 2;
    for (int trial = 0; trial < c.trials; ++trial) {
      const std::uint64_t seed = derive_seed(c.seed, static_cast<std::uint64_t>(n * 1000 + trial));
      const Budget b{c.samples, seed};
      out.push_back(check_jensen(n, seed));
      attempt([&] {
        const BodyPair pair = centered_polar_pair(n, m, seed);
        const LogConcaveFn f = LogConcaveFn::exp_neg_support_pow(pair.k, Exponent::finite(1.0));
        const LogConcaveFn g = LogConcaveFn::exp_neg_gauge_pow(pair.l, Exponent::finite(2.0));
        const Budget small{std::min<std::uint64_t>(c.samples, 20000), seed};
        for (const LogConcaveFn* h : {&f, &g}) {
          CheckReport r = check_ball_body_volume(*h, small);
          tag(r, pair.instance);
          out.push_back(std::move(r));
          for (double level : {0.1, 0.5, 0.9}) {
            CheckReport q = check_level_inclusion(*h, level, 64, derive_seed(seed, 5));
            tag(q, pair.instance);
            out.push_back(std::move(q));
          }
          for (auto& e : check_epigraph_barycenter(*h, b)) {
            tag(e, pair.instance);
            out.push_back(std::move(e));
          }
        }
        for (Exponent p : c.ps) {
          if (p.is_infinite()) continue;
          CheckReport r = check_centered_level_sets(pair.k, pair.l, p, std::exp(-1.0), b);
          tag(r, pair.instance);
          out.push_back(std::move(r));
          if (n <= 2) {
            CheckReport a = check_asplund_closed_form(pair.k, p, 8, derive_seed(seed, 6));
            tag(a, pair.instance);
            out.push_back(std::move(a));
          }
        }
      });
    }
  }
}

}  // namespace

std::vector<std::string> suite_names() { return {"classical", "theorems", "lemmas"}; }

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  if (config.dims.empty()) throw Error(ErrorCode::InvalidArgument, "no dimensions given");
  if (config.ps.empty()) throw Error(ErrorCode::InvalidArgument, "no exponents given");
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  for (int n : config.dims) {
    if (n < 1 || n > 8) throw Error(ErrorCode::InvalidArgument, "dimension out of range");
  }
  Sink out;
  if (config.suite == "classical") {
    classical(config, out);
  } else if (config.suite == "theorems") {
    theorems(config, out);
  } else if (config.suite == "lemmas") {
    lemmas(config, out);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + config.suite + "'");
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  return out;
}

}  // namespace polarcalc::harness
