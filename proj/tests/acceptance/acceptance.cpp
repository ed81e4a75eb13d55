// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Tolerances are pinned here; exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "polarcalc/cli.hpp"
#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

using namespace polarcalc;
using namespace polarcalc::harness;
using geometry::ConvexBody;
using logconcave::LogConcaveFn;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const Exponent kOne = Exponent::finite(1.0);
const Exponent kTwo = Exponent::finite(2.0);
const Exponent kInfty = Exponent::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

struct Tally {
  int total = 0;
  int fail = 0;
  int other = 0;  // neither Pass nor Fail
  void add(const CheckReport& r) {
    ++total;
    if (r.verdict == Verdict::Fail) ++fail;
    if (r.verdict == Verdict::Inconclusive) ++other;
  }
  std::string str() const {
    return std::to_string(total) + " reports, " + std::to_string(fail) + " fail, " + std::to_string(other) +
           " inconclusive";
  }
};

Outcome simplex_equality() {
  const ConvexBody s = simplex(2, true);
  const auto diff = volume::volume(geometry::lp_sum(s, geometry::negate(s), kOne), 1000, 0);
  const auto vol = volume::volume(s, 1000, 0);
  const double ratio = diff.value / vol.value;
  const auto r = check_rs_two_bodies(s, s, Vector::Zero(2), Budget{1000, 0});
  Outcome o;
  o.pass = diff.method == volume::Method::Exact && std::abs(ratio - 6.0) <= 1e-9 &&
           std::abs(r.ratio - 1.0) <= 1e-9 && r.verdict == Verdict::Pass;
  o.detail = "|S-S|/|S| = " + fmt(ratio) + ", check ratio " + fmt(r.ratio);
  return o;
}

Outcome gamma_formula() {
  const ConvexBody b = ConvexBody::ball(2, 1.0);
  const auto g = volume::gamma_route_integral(b, kTwo, 1000000, 1);
  const double expected = std::tgamma(2.0) * volume::volume(b, 1000, 0).value;
  const double rel = std::abs(g.value - expected) / expected;
  return {rel <= 1e-3 && std::abs(expected - std::numbers::pi) <= 1e-12,
          "integral " + fmt(g.value) + " vs " + fmt(expected) + ", relative error " + fmt(rel)};
}

Outcome constant_identity() {
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const double c = 1.0 / numeric::binomial(2 * n, n);
    worst = std::max(worst, std::abs(volume::gamma_ratio(n, kOne) - c) / c);
  }
  return {worst <= 1e-12, "max relative deviation " + fmt(worst)};
}

Outcome firey_equality() {
  const ConvexBody k(geometry::Polytope::from_vertices(
      {make_vector({-1, -1}), make_vector({1, -1}), make_vector({1, 1}), make_vector({-1, 1})}));
  const auto r = check_firey(k, Budget{1000, 0});
  const double gap = std::abs(r.lhs.value - r.rhs.value);
  return {gap <= 1e-9 && r.lhs.sigma == 0.0 && r.verdict == Verdict::Pass,
          "|(K-K)°| = " + fmt(r.lhs.value) + ", |K°|/4 = " + fmt(r.rhs.value)};
}

Outcome lower_bound_suite() {
  Tally t;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t seed = derive_seed(5, i);
    const BodyPair pair = centered_polar_pair(2, 6, seed);
    for (Exponent p : {kOne, kTwo, kInfty}) t.add(check_rspolar(pair.k, pair.l, p, Budget{100000, seed}));
  }
  return {t.fail == 0 && t.total == 150, t.str()};
}

Outcome upper_bound_suite() {
  Tally t;
  int disagree = 0;
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t seed = derive_seed(6, i);
    const BodyPair pair = general_pair(2, 6, seed);
    const Budget b{100000, seed};
    for (Exponent p : {kOne, kTwo, kInfty}) {
      const CheckReport r = check_rspolar_reverse(pair.k, pair.l, p, b);
      t.add(r);
      if (p == kTwo) continue;
      const CheckReport ref =
          p == kOne ? check_volume_polars(pair.k, pair.l, b)
                    : check_rs_two_bodies(geometry::polar(pair.k), geometry::negate(geometry::polar(pair.l)),
                                          Vector::Zero(2), b);
      const double s = std::hypot(r.ratio * std::hypot(r.lhs.sigma / r.lhs.value, r.rhs.sigma / r.rhs.value),
                                  ref.ratio * std::hypot(ref.lhs.sigma / ref.lhs.value, ref.rhs.sigma / ref.rhs.value));
      if (std::abs(r.ratio - ref.ratio) > 3.0 * s + 1e-9 * ref.ratio) ++disagree;
    }
  }
  return {t.fail == 0 && t.total == 150 && disagree == 0,
          t.str() + ", " + std::to_string(disagree) + " disagreements with the p = 1 and p = inf reductions"};
}

Outcome functional_reverse() {
  const auto g = LogConcaveFn::gaussian(1, 1.0);
  const auto r = check_reverse_functional_rs(g, g, Budget{100000, 0});

  // Ent of e^{-x^2/2} by a midpoint rule.
  const int steps = 400000;
  const double h = 60.0 / steps;
  double mass = 0.0, info = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double x = -30.0 + (i + 0.5) * h;
    const double f = std::exp(-0.5 * x * x);
    mass += f * h;
    info += 0.5 * x * x * f * h;
  }
  const double quad = info / mass;
  const double ent = r.instance["entropy_f"].get<double>();
  const bool entropies = std::abs(ent - 0.5) <= 1e-6 && std::abs(quad - 0.5) <= 1e-6 &&
                         std::abs(r.instance["entropy_g"].get<double>() - 0.5) <= 1e-6;
  const bool exact = r.lhs.sigma == 0.0 && r.rhs.sigma == 0.0;

  Tally t;
  for (int i = 0; i < 20; ++i) {
    const FunctionPair p = function_pair(FunctionFamily::Indicator, 2, derive_seed(7, i));
    t.add(check_reverse_functional_rs(p.f, p.g, Budget{100000, derive_seed(7, i)}));
  }
  return {entropies && exact && r.verdict == Verdict::Pass && t.fail == 0,
          "Ent = " + fmt(ent) + " (quadrature " + fmt(quad) + "), Gaussian ratio " + fmt(r.ratio) +
              "; indicator reduction: " + t.str()};
}

Outcome lemma_suite() {
  std::ostringstream detail;
  bool ok = true;

  int jensen_bad = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    if (check_jensen(1 + static_cast<int>(seed % 3), seed).verdict != Verdict::Pass) ++jensen_bad;
  }
  ok = ok && jensen_bad == 0;
  detail << "jensen " << jensen_bad << "/1000 violations";

  std::vector<LogConcaveFn> fns;
  std::vector<BodyPair> pairs;
  for (int i = 0; i < 5; ++i) {
    pairs.push_back(centered_polar_pair(2, 6, derive_seed(8, i)));
    fns.push_back(LogConcaveFn::exp_neg_support_pow(pairs.back().k, kOne));
    fns.push_back(LogConcaveFn::exp_neg_gauge_pow(pairs.back().l, kTwo));
  }

  Tally ball, incl, epi, centred, asplund;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const std::uint64_t seed = derive_seed(9, i);
    ball.add(check_ball_body_volume(fns[i], Budget{20000, seed}));
    for (double t : {0.1, 0.5, 0.9}) incl.add(check_level_inclusion(fns[i], t, 64, seed));
  }
  for (int i = 0; i < 5; ++i) {
    const std::uint64_t seed = derive_seed(10, i);
    for (const auto& f : {LogConcaveFn::gaussian(2, 0.5 + 0.3 * i), fns[2 * i]}) {
      for (const auto& r : check_epigraph_barycenter(f, Budget{100000, seed})) epi.add(r);
    }
    for (Exponent p : {kOne, kTwo}) {
      centred.add(check_centered_level_sets(pairs[i].k, pairs[i].l, p, std::exp(-1.0), Budget{100000, seed}));
      asplund.add(check_asplund_closed_form(pairs[i].k, p, 20, seed));
    }
  }
  const auto all_pass = [](const Tally& t) { return t.fail == 0 && t.other == 0; };
  ok = ok && all_pass(ball) && all_pass(incl) && all_pass(epi) && all_pass(centred) && all_pass(asplund);
  detail << "; ball body volume " << ball.str() << "; inclusion " << incl.str() << "; epigraph " << epi.str()
         << "; centred level sets " << centred.str() << "; Asplund closed form " << asplund.str();
  return {ok, detail.str()};
}

Outcome duality_regression() {
  double worst = 0.0;
  int pairs = 0;
  for (std::uint64_t s = 0; pairs < 20; ++s) {
    const ConvexBody k(geometry::random_polytope(2, 7, 1000 + s));
    const ConvexBody l(geometry::random_polytope(2, 7, 2000 + s));
    if (!k.contains_origin_interior() || !l.contains_origin_interior()) continue;
    ++pairs;
    numeric::Rng rng(s);
    for (Exponent p : {kOne, Exponent::finite(1.5), kTwo, Exponent::finite(4.0), kInfty}) {
      const ConvexBody dual = geometry::lp_intersection(k, l, p);
      for (int i = 0; i < 100; ++i) {
        const Vector u = numeric::random_direction(rng, 2);
        const double a = dual.gauge(u);
        const double b = geometry::gauge_lp_intersection_direct(k, l, p, u);
        worst = std::max(worst, std::abs(a - b) / (1.0 + a));
      }
    }
  }
  return {worst <= 1e-9, "20 pairs x 5 exponents x 100 directions, max deviation " + fmt(worst)};
}

Outcome determinism() {
  ::unsetenv("POLARCALC_SEED");
  const std::vector<std::string> args = {"verify", "--suite", "theorems", "--seed", "7"};
  std::ostringstream a, b, sink;
  const int ca = cli::run(args, a, sink);
  const int cb = cli::run(args, b, sink);
  const bool same = a.str() == b.str() && !a.str().empty();
  return {same && ca == cb, std::string(same ? "identical" : "different") + " reports (" +
                                std::to_string(a.str().size()) + " bytes), exit codes " + std::to_string(ca) + "/" +
                                std::to_string(cb)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"simplex equality", simplex_equality},
      {"Gamma formula", gamma_formula},
      {"constant identity", constant_identity},
      {"Firey equality", firey_equality},
      {"lower bound suite", lower_bound_suite},
      {"upper bound suite", upper_bound_suite},
      {"reverse functional inequality", functional_reverse},
      {"lemma suite", lemma_suite},
      {"duality regression", duality_regression},
      {"determinism", determinism},
  };
  const std::vector<double> limits = {1.0, 10.0, 0, 0, 300.0, 0, 0, 0, 0, 0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0.0 && secs > limits[i]) {
      o.pass = false;
      o.detail += "; over the " + fmt(limits[i]) + " s limit";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " " << criteria[i].first << ": " << o.detail
              << " (" << fmt(secs) << " s)" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
