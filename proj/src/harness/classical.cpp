#include <algorithm>
#include <cmath>

#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::harness {
namespace {

using geometry::GaugeOracle;
using geometry::SupportOracle;

void require_same_dim(const ConvexBody& k, const ConvexBody& l) {
  if (k.dim() != l.dim()) throw Error(ErrorCode::DimMismatch, "bodies of different dimension");
}

nlohmann::json body_instance(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  return {{"n", k.dim()},
          {"K", geometry::to_json(k)},
          {"L", geometry::to_json(l)},
          {"samples", b.samples},
          {"seed", b.seed}};
}

// K ∩ L: exact for polytopes, max of gauges when 0 is interior to both, and
// otherwise a membership body whose support min(h_K, h_L) only bounds it.
ConvexBody intersection(const ConvexBody& k, const ConvexBody& l) {
  const int n = k.dim();
  if (const auto* pk = k.as_polytope()) {
    if (const auto* pl = l.as_polytope()) {
      auto cut = geometry::intersect(*pk, *pl);
      if (!cut) throw Error(ErrorCode::DegenerateInstance, "intersection has empty interior");
      return ConvexBody(*cut);
    }
  }
  if (k.contains_origin_interior() && l.contains_origin_interior()) {
    GaugeOracle g;
    g.dim = n;
    g.gauge = [k, l](const Vector& x) { return std::max(k.gauge(x), l.gauge(x)); };
    g.bounding_radius = std::min(k.bounding_radius(), l.bounding_radius());
    g.inner_radius = std::min(k.inner_radius(), l.inner_radius());
    g.description = "intersection(" + k.description() + ", " + l.description() + ")";
    return ConvexBody(std::move(g));
  }
  SupportOracle s;
  s.dim = n;
  s.support = [k, l](const Vector& u) { return std::min(k.support(u), l.support(u)); };
  s.member = [k, l](const Vector& x) { return k.contains(x) && l.contains(x); };
  s.bounding_radius = std::min(k.bounding_radius(), l.bounding_radius());
  s.interior_point = Vector::Zero(n);
  s.description = "intersection(" + k.description() + ", " + l.description() + ")";
  return ConvexBody(std::move(s));
}

ConvexBody difference(const ConvexBody& k, const ConvexBody& l) {
  return geometry::lp_sum(k, geometry::negate(l), Exponent::finite(1.0));
}

}  // namespace

CheckReport check_rs_two_bodies(const ConvexBody& k, const ConvexBody& l, const Vector& x0, const Budget& b) {
  require_same_dim(k, l);
  const int n = k.dim();
  CheckReport r;
  r.check_id = "rs_two_bodies";
  r.instance = body_instance(k, l, b);
  r.instance["x0"] = std::vector<double>(x0.data(), x0.data() + x0.size());
  const Estimate cap = measure(r, "K∩(x0+L)", intersection(k, geometry::translate(l, x0)), b);
  const Estimate diff = measure(r, "K-L", difference(k, l), b);
  const Estimate vk = measure(r, "K", k, b);
  const Estimate vl = measure(r, "L", l, b);
  r.lhs = cap * diff;
  r.rhs = numeric::binomial(2 * n, n) * (vk * vl);
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_milman_pajor(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  require_same_dim(k, l);
  CheckReport r;
  r.check_id = "milman_pajor";
  r.instance = body_instance(k, l, b);
  const ConvexBody kc = geometry::center(k, b.samples, derive_seed(b.seed, 1));
  const ConvexBody lc = geometry::center(l, b.samples, derive_seed(b.seed, 2));
  const Estimate vk = measure(r, "K", kc, b);
  const Estimate vl = measure(r, "L", lc, b);
  const Estimate diff = measure(r, "K-L", difference(kc, lc), b);
  const Estimate cap = measure(r, "K∩L", intersection(kc, lc), b);
  r.lhs = vk * vl;
  r.rhs = diff * cap;
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_volume_polars(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  require_same_dim(k, l);
  if (!k.contains_origin_interior() || !l.contains_origin_interior()) {
    throw Error(ErrorCode::HypothesisViolated, "the origin must be interior to both bodies");
  }
  CheckReport r;
  r.check_id = "volume_polars";
  r.instance = body_instance(k, l, b);
  const ConvexBody kp = geometry::polar(k);
  const ConvexBody lp = geometry::polar(l);
  // (K ∩ L)° = conv(K° ∪ L°) when the intersection is not a polytope.
  const bool exact = k.as_polytope() && l.as_polytope();
  const ConvexBody cap_polar =
      exact ? geometry::polar(intersection(k, l)) : geometry::lp_sum(kp, lp, Exponent::infinity());
  const Estimate a = measure(r, "(K∩L)°", cap_polar, b);
  const Estimate d = measure(r, "(K-L)°", geometry::polar(difference(k, l)), b);
  const Estimate vk = measure(r, "K°", kp, b);
  const Estimate vl = measure(r, "L°", lp, b);
  r.lhs = a * d;
  r.rhs = vk * vl;
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_rs_convex_hull(const ConvexBody& k, const ConvexBody& l, const Budget& b) {
  require_same_dim(k, l);
  const int n = k.dim();
  const Vector zero = Vector::Zero(n);
  if (!k.contains(zero) || !l.contains(zero)) {
    throw Error(ErrorCode::HypothesisViolated, "both bodies must contain the origin");
  }
  CheckReport r;
  r.check_id = "rs_convex_hull";
  r.instance = body_instance(k, l, b);
  const ConvexBody hull = geometry::lp_sum(k, geometry::negate(l), Exponent::infinity());
  const Estimate cap = measure(r, "K∩L", intersection(k, l), b);
  const Estimate h = measure(r, "conv{K,-L}", hull, b);
  const Estimate vk = measure(r, "K", k, b);
  const Estimate vl = measure(r, "L", l, b);
  r.lhs = cap * h;
  r.rhs = std::pow(2.0, n) * (vk * vl);
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_firey(const ConvexBody& k, const Budget& b) {
  const int n = k.dim();
  CheckReport r;
  r.check_id = "firey";
  r.instance = {{"n", n}, {"K", geometry::to_json(k)}, {"samples", b.samples}, {"seed", b.seed}};
  const Estimate d = measure(r, "(K-K)°", geometry::polar(difference(k, k)), b);
  const Estimate vk = measure(r, "K°", geometry::polar(k), b);
  r.lhs = d;
  r.rhs = std::pow(2.0, -n) * vk;
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_bm_dual_p(const ConvexBody& k, Exponent p, const Budget& b) {
  const int n = k.dim();
  CheckReport r;
  r.check_id = "bm_dual_p";
  r.instance = {{"n", n}, {"p", p.to_string()}, {"K", geometry::to_json(k)}, {"samples", b.samples},
                {"seed", b.seed}};
  const ConvexBody sum = geometry::lp_sum(k, geometry::negate(k), p);
  const Estimate d = measure(r, "(K+_p(-K))°", geometry::polar(sum), b);
  const Estimate vk = measure(r, "K°", geometry::polar(k), b);
  r.lhs = d;
  r.rhs = std::pow(2.0, -n * p.reciprocal()) * vk;
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

}  // namespace polarcalc::harness
