#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::harness {
namespace {

using numeric::MomentAccumulator;

// A vector identity is tested along one seeded random direction, which keeps
// the 3 sigma band honest instead of taking the worst of n coordinates.
Vector probe(int n, std::uint64_t seed) {
  numeric::Rng rng(derive_seed(seed, 0x9b));
  return numeric::random_direction(rng, n);
}

Estimate project(const Vector& theta, const VectorEstimate& v) {
  return {theta.dot(v.value), std::sqrt(theta.cwiseProduct(v.sigma).squaredNorm())};
}

}  // namespace

CheckReport check_jensen(int n, std::uint64_t seed) {
  numeric::Rng rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 10);
  std::uniform_real_distribution<double> exponent(1.0, 3.0);
  std::exponential_distribution<double> gamma1(1.0);

  const geometry::Polytope k = geometry::random_polytope(n, n + 3, derive_seed(seed, 1));
  Vector c(n), a(n);
  for (int i = 0; i < n; ++i) {
    c(i) = unit(rng);
    a(i) = unit(rng);
  }
  const double p = exponent(rng);
  const auto psi = [&](const Vector& x) {
    return std::exp(-std::pow(std::max(0.0, k.support(x - c)), p) - a.dot(x));
  };

  const int m = count(rng);
  std::vector<Vector> atoms;
  std::vector<double> weights;
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    atoms.push_back(2.0 * numeric::random_in_cube(rng, n, 1.0));
    weights.push_back(gamma1(rng));
    total += weights.back();
  }
  double mass = 0.0;
  Vector moment = Vector::Zero(n);
  for (int j = 0; j < m; ++j) {
    const double w = weights[j] / total * psi(atoms[j]);
    mass += w;
    moment += w * atoms[j];
  }

  CheckReport r;
  r.check_id = "jensen";
  r.instance = {{"n", n}, {"seed", seed}, {"atoms", m}, {"exponent", p}};
  r.lhs = {mass, 0.0};
  r.rhs = {psi(moment / mass), 0.0};
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_ball_body_volume(const LogConcaveFn& f, const Budget& b) {
  CheckReport r;
  r.check_id = "ball_body_volume";
  r.instance = {{"n", f.dim()}, {"f", logconcave::to_json(f)}, {"samples", b.samples}, {"seed", b.seed}};
  const double f0 = f(Vector::Zero(f.dim()));
  r.lhs = measure(r, "K_f", logconcave::ball_body(f), b);
  r.rhs = (1.0 / f0) * logconcave::integral(f, b.samples, derive_seed(b.seed, 1));
  r.sense = Sense::Equal;
  judge(r, 1e-6);
  return r;
}

CheckReport check_level_inclusion(const LogConcaveFn& f, double t, int rays, std::uint64_t seed) {
  const int n = f.dim();
  const ConvexBody kt = logconcave::level_set(f, t).body;
  const double shrink = std::pow(t, 1.0 / n);
  numeric::Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < rays; ++i) {
    const Vector u = numeric::random_direction(rng, n);
    const Vector x = shrink * u / kt.gauge(u);
    worst = std::max(worst, logconcave::ball_body_gauge(f, x));
  }
  CheckReport r;
  r.check_id = "level_inclusion";
  r.instance = {{"n", n}, {"f", logconcave::to_json(f)}, {"t", t}, {"rays", rays}, {"seed", seed}};
  r.lhs = {worst, 0.0};
  r.rhs = {1.0, 0.0};
  r.sense = Sense::AtMost;
  judge(r, 1e-6);
  return r;
}

std::vector<CheckReport> check_epigraph_barycenter(const LogConcaveFn& f, const Budget& b) {
  const int n = f.dim();
  const double sup = logconcave::sup_norm(f);
  const double radius = f.bounding_radius();
  const Vector theta = probe(n, b.seed);

  // x uniform in the cube and t ~ Exp(1): the hit indicator of the epigraph
  // then has the law of e^{-t} dt dx restricted to L.
  struct Moments {
    MomentAccumulator x;
    MomentAccumulator t;
  };
  auto parts = numeric::run_shards<Moments>(
      derive_seed(b.seed, 0x400), b.samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
        Moments m;
        std::exponential_distribution<double> level(1.0);
        for (std::uint64_t i = 0; i < count; ++i) {
          const Vector x = numeric::random_in_cube(rng, n, radius);
          const double t = level(rng);
          const double hit = f(x) >= std::exp(-t) * sup ? 1.0 : 0.0;
          m.x.add(hit * theta.dot(x), hit);
          m.t.add(hit * t, hit);
        }
        return m;
      });
  Moments total;
  for (const auto& p : parts) {
    total.x.merge(p.x);
    total.t.merge(p.t);
  }

  nlohmann::json instance = {{"n", n}, {"f", logconcave::to_json(f)}, {"samples", b.samples}, {"seed", b.seed}};

  CheckReport rx;
  rx.check_id = "epigraph_barycenter_x";
  rx.instance = instance;
  rx.instance["direction"] = std::vector<double>(theta.data(), theta.data() + n);
  rx.lhs = total.x.ratio();
  rx.rhs = project(theta, logconcave::barycenter_fn(f, b.samples, derive_seed(b.seed, 0x401)));
  rx.sense = Sense::Equal;
  judge(rx);

  CheckReport rt;
  rt.check_id = "epigraph_barycenter_t";
  rt.instance = instance;
  const Estimate ent = logconcave::entropy(f, b.samples, derive_seed(b.seed, 0x402));
  rt.lhs = total.t.ratio();
  rt.rhs = {1.0 + ent.value + std::log(sup), ent.sigma};
  rt.sense = Sense::Equal;
  judge(rt);
  return {rx, rt};
}

CheckReport check_centered_level_sets(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                      const Budget& b) {
  if (p.is_infinite()) throw Error(ErrorCode::BadExponent, "the level sets need a finite exponent");
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  const int n = k.dim();
  const double pv = p.value();
  const double s = std::pow(-std::log(t), 1.0 / pv);
  const double sp = std::pow(s, pv);
  const ConvexBody kp = geometry::polar(k);
  const ConvexBody lp = geometry::polar(l);
  const double vk = volume::volume(kp, b.samples, derive_seed(b.seed, 1)).value;
  const double vl = volume::volume(lp, b.samples, derive_seed(b.seed, 2)).value;
  const Vector theta = probe(n, b.seed);

  // <theta, int x (s^p - h(x)^p)_+^{n/p} dx> over the cube holding s·body°.
  const auto weighted_moment = [&](const ConvexBody& body, double radius, std::uint64_t seed) {
    auto parts = numeric::run_shards<MomentAccumulator>(
        seed, b.samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
          MomentAccumulator m;
          for (std::uint64_t i = 0; i < count; ++i) {
            const Vector x = numeric::random_in_cube(rng, n, radius);
            const double gap = sp - std::pow(std::max(body.support(x), 0.0), pv);
            const double w = gap > 0.0 ? std::pow(gap, n / pv) : 0.0;
            m.add(w * theta.dot(x), 0.0);
          }
          return m;
        });
    MomentAccumulator total;
    for (const auto& part : parts) total.merge(part);
    return std::pow(2.0 * radius, n) * total.mean_a();
  };

  const Estimate first = weighted_moment(k, s * volume::cube_radius(kp), derive_seed(b.seed, 0x500));
  const Estimate second = weighted_moment(l, s * volume::cube_radius(lp), derive_seed(b.seed, 0x501));
  const double whole = std::pow(s, 2 * n) * volume::gamma_ratio(n, p) * vk * vl;
  const Estimate combined{(vl * first.value + vk * second.value) / whole,
                          std::hypot(vl * first.sigma, vk * second.sigma) / whole};
  const double literal = vl * (first.value + second.value) / whole;

  CheckReport r;
  r.check_id = "centered_level_sets";
  r.instance = {{"n", n},
                {"p", p.to_string()},
                {"t", t},
                {"K", geometry::to_json(k)},
                {"L", geometry::to_json(l)},
                {"samples", b.samples},
                {"seed", b.seed}};
  r.instance["direction"] = std::vector<double>(theta.data(), theta.data() + n);
  r.instance["literal_variant"] = literal;
  r.lhs = combined;
  r.rhs = {0.0, 0.0};
  r.sense = Sense::Equal;
  judge(r);
  return r;
}

CheckReport check_asplund_closed_form(const ConvexBody& k, Exponent p, int points, std::uint64_t seed) {
  const int n = k.dim();
  const LogConcaveFn f = LogConcaveFn::exp_neg_support_pow(k, p);
  const LogConcaveFn closed = logconcave::asplund(f, f);
  const LogConcaveFn grid = logconcave::asplund_numeric(f, f);
  const double radius = volume::cube_radius(geometry::polar(k));
  numeric::Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Vector x = numeric::random_in_cube(rng, n, radius);
    worst = std::max(worst, std::abs(closed(x) - grid(x)));
  }
  CheckReport r;
  r.check_id = "asplund_closed_form";
  r.instance = {{"n", n}, {"p", p.to_string()}, {"K", geometry::to_json(k)}, {"points", points}, {"seed", seed}};
  r.lhs = {worst, 0.0};
  r.rhs = {1e-3, 0.0};
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

}  // namespace polarcalc::harness
