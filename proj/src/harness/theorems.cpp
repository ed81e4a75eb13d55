#include <cmath>

#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::harness {
namespace {

nlohmann::json pair_instance(const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b) {
  return {{"n", k.dim()},
          {"p", p.to_string()},
          {"K", geometry::to_json(k)},
          {"L", geometry::to_json(l)},
          {"samples", b.samples},
          {"seed", b.seed}};
}

struct PolarPair {
  Estimate cap;  // |(K ∩_p L)°|
  Estimate sum;  // |(K +_p (-L))°|
  Estimate kp;   // |K°|
  Estimate lp;   // |L°|
};

// (K ∩_p L)° is measured as K° +_q L°, which avoids a double polar.
PolarPair polar_volumes(CheckReport& r, const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b) {
  const ConvexBody kp = geometry::polar(k);
  const ConvexBody lp = geometry::polar(l);
  PolarPair out;
  out.cap = measure(r, "(K∩_pL)°", geometry::lp_sum(kp, lp, p.conjugate()), b);
  out.sum = measure(r, "(K+_p(-L))°", geometry::polar(geometry::lp_sum(k, geometry::negate(l), p)), b);
  out.kp = measure(r, "K°", kp, b);
  out.lp = measure(r, "L°", lp, b);
  return out;
}

void require_pair(const ConvexBody& k, const ConvexBody& l) {
  if (k.dim() != l.dim()) throw Error(ErrorCode::DimMismatch, "bodies of different dimension");
  if (!k.contains_origin_interior() || !l.contains_origin_interior()) {
    throw Error(ErrorCode::HypothesisViolated, "the origin must be interior to both bodies");
  }
}

// Hit-or-miss volume of {x : member(x)} inside [-radius, radius]^dim.
volume::VolumeEstimate hit_or_miss(int dim, double radius, const std::function<bool(const Vector&)>& member,
                                   std::uint64_t samples, std::uint64_t seed) {
  auto counts = numeric::run_shards<std::uint64_t>(seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (member(numeric::random_in_cube(rng, dim, radius))) ++hits;
    }
    return hits;
  });
  std::uint64_t hits = 0;
  for (auto c : counts) hits += c;
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  const double cube = std::pow(2.0 * radius, dim);
  const double se = std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples)) * cube;
  return {frac * cube, se, volume::Method::MC, samples};
}

VolumeEntry entry(const std::string& name, const volume::VolumeEstimate& primary, double closed_form) {
  VolumeEntry e;
  e.name = name;
  e.primary = primary;
  e.alternate = {closed_form, 0.0, volume::Method::Exact, 0};
  e.has_alternate = true;
  e.agree = std::abs(primary.value - closed_form) <= 3.0 * primary.sigma + 1e-12 * std::abs(closed_form);
  e.resolved = !(primary.method == volume::Method::MC && primary.value == 0.0);
  return e;
}

struct ProjectionSection {
  Estimate whole;    // |L_t|
  Estimate shadow;   // |P_H L_t|
  Estimate section;  // |L_t ∩ H^⊥|
};

// L_t lives in R^{2n} with coordinates (u, v); x = (u+v)/√2 and y = (v-u)/√2
// are an orthogonal change of variables, so with s = (-log t)^{1/p}
//   |L_t| = s^{2n} Gamma-ratio |K°||L°|,  |P_H L_t| = 2^{-n/2} s^n |(K∩_pL)°|,
//   |L_t ∩ H^⊥| = 2^{n/2} s^n |(K+_p(-L))°|.
ProjectionSection projection_section(CheckReport& r, const ConvexBody& k, const ConvexBody& l, Exponent p,
                                     double t, const Budget& b) {
  if (p.is_infinite()) throw Error(ErrorCode::BadExponent, "the level sets need a finite exponent");
  if (!(t > 0.0 && t < 1.0)) throw Error(ErrorCode::InvalidArgument, "t must lie in (0, 1)");
  require_pair(k, l);
  const int n = k.dim();
  const double pv = p.value();
  const double s = std::pow(-std::log(t), 1.0 / pv);
  const double sp = std::pow(s, pv);
  const double rt2 = std::sqrt(2.0);
  r.instance = pair_instance(k, l, p, b);
  r.instance["t"] = t;

  const ConvexBody kp = geometry::polar(k);
  const ConvexBody lp = geometry::polar(l);
  const PolarPair v = polar_volumes(r, k, l, p, b);

  // The sampling cubes are sized for s >= 1 so that thin level sets near
  // t = 1 stay below resolution instead of being resolved by a shrunken cube.
  const double s_cube = std::max(s, 1.0);
  const double rk = volume::cube_radius(kp);
  const double rl = volume::cube_radius(lp);
  const auto level = [&](const Vector& x, const Vector& y) {
    const double a = k.support(x);
    const double c = l.support(y);
    return std::pow(std::max(a, 0.0), pv) + std::pow(std::max(c, 0.0), pv) <= sp;
  };

  const auto whole = hit_or_miss(
      2 * n, s_cube * (rk + rl) / rt2,
      [&](const Vector& w) {
        const Vector u = w.head(n);
        const Vector vv = w.tail(n);
        return level((u + vv) / rt2, (vv - u) / rt2);
      },
      b.samples, derive_seed(b.seed, 0x200));
  const double whole_closed = std::pow(s, 2 * n) * volume::gamma_ratio(n, p) * v.kp.value * v.lp.value;
  r.volumes.push_back(entry("L_t", whole, whole_closed));

  const auto section = hit_or_miss(
      n, rt2 * s_cube * rk, [&](const Vector& u) { return level(u / rt2, -u / rt2); }, b.samples,
      derive_seed(b.seed, 0x201));
  const double section_scale = std::pow(2.0, 0.5 * n) * std::pow(s, n);
  r.volumes.push_back(entry("L_t∩H⊥", section, section_scale * v.sum.value));

  ProjectionSection out;
  out.whole = whole.estimate();
  out.shadow = std::pow(2.0, -0.5 * n) * std::pow(s, n) * v.cap;
  out.section = section.estimate();
  return out;
}

void require_centred_polars(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  const auto bk = geometry::barycenter(geometry::polar(k), b.samples, derive_seed(b.seed, 0x300));
  const auto bl = geometry::barycenter(geometry::polar(l), b.samples, derive_seed(b.seed, 0x301));
  for (int i = 0; i < k.dim(); ++i) {
    const double gap = std::abs(bk.value(i) + bl.value(i));
    if (gap > 3.0 * std::hypot(bk.sigma(i), bl.sigma(i)) + 1e-9) {
      throw Error(ErrorCode::HypothesisViolated, "barycenters of K° and L° are not opposite");
    }
  }
}

}  // namespace

CheckReport check_rspolar(const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b) {
  require_pair(k, l);
  require_centred_polars(k, l, b);
  const int n = k.dim();
  CheckReport r;
  r.check_id = "rspolar";
  r.instance = pair_instance(k, l, p, b);
  const PolarPair v = polar_volumes(r, k, l, p, b);
  r.lhs = v.cap * v.sum;
  r.rhs = volume::gamma_ratio(n, p) * (v.kp * v.lp);
  r.sense = Sense::AtLeast;
  judge(r);
  return r;
}

CheckReport check_rspolar_p1(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  require_pair(k, l);
  require_centred_polars(k, l, b);
  const int n = k.dim();
  const Exponent one = Exponent::finite(1.0);
  CheckReport r;
  r.check_id = "rspolar_p1";
  r.instance = pair_instance(k, l, one, b);
  const PolarPair v = polar_volumes(r, k, l, one, b);
  r.lhs = v.cap * v.sum;
  r.rhs = (1.0 / numeric::binomial(2 * n, n)) * (v.kp * v.lp);
  r.sense = Sense::AtLeast;
  judge(r);
  return r;
}

CheckReport check_rspolar_reverse(const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b) {
  require_pair(k, l);
  const int n = k.dim();
  CheckReport r;
  r.check_id = "rspolar_reverse";
  r.instance = pair_instance(k, l, p, b);
  const PolarPair v = polar_volumes(r, k, l, p, b);
  r.lhs = v.cap * v.sum;
  r.rhs = (numeric::binomial(2 * n, n) * volume::gamma_ratio(n, p)) * (v.kp * v.lp);
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_projection_section(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                     const Budget& b) {
  CheckReport r;
  r.check_id = "projection_section";
  const ProjectionSection ps = projection_section(r, k, l, p, t, b);
  const int n = k.dim();
  r.lhs = ps.whole;
  r.rhs = (1.0 / numeric::binomial(2 * n, n)) * (ps.shadow * ps.section);
  r.sense = Sense::AtLeast;
  judge(r);
  return r;
}

CheckReport check_projection_section_upper(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                           const Budget& b) {
  CheckReport r;
  r.check_id = "projection_section_upper";
  const ProjectionSection ps = projection_section(r, k, l, p, t, b);
  r.lhs = ps.whole;
  r.rhs = ps.shadow * ps.section;
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

}  // namespace polarcalc::harness
