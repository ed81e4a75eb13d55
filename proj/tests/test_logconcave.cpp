#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "polarcalc/logconcave.hpp"
#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

using namespace polarcalc;
using namespace polarcalc::geometry;
using namespace polarcalc::logconcave;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Polytope box(int n, double lo, double hi) {
  std::vector<Vector> v;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = (mask >> i & 1) ? hi : lo;
    v.push_back(x);
  }
  return Polytope::from_vertices(v);
}

ConvexBody interval(double a, double b) { return ConvexBody(box(1, a, b)); }

double uniform(numeric::Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Vector random_point(numeric::Rng& rng, int n, double r) { return numeric::random_in_cube(rng, n, r); }

}  // namespace

TEST_CASE("family evaluation") {
  const ConvexBody k(random_polytope(2, 8, 21));
  numeric::Rng rng(5);
  const auto h = LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(2.0));
  const auto g = LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(3.0));
  const auto ind = LogConcaveFn::indicator(k);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_point(rng, 2, 2.0);
    CHECK(h(x) == doctest::Approx(std::exp(-std::pow(std::max(0.0, k.support(x)), 2.0))));
    CHECK(g(x) == doctest::Approx(std::exp(-std::pow(k.gauge(x), 3.0) / 3.0)));
    CHECK(ind(x) == (k.contains(x) ? 1.0 : 0.0));
  }
  CHECK(LogConcaveFn::gaussian(2, 1.0)(make_vector({1, 1})) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(LogConcaveFn::exp_neg_support_pow(k, Exponent::infinity()), Error);
  CHECK_THROWS_AS(LogConcaveFn::exp_neg_gauge_pow(translate(k, make_vector({5, 0})), Exponent::finite(2.0)), Error);
  CHECK_THROWS_AS(LogConcaveFn::gaussian(2, 0.0), Error);
}

TEST_CASE("log-concavity on sampled triples") {
  const ConvexBody k(random_polytope(2, 7, 3));
  const std::vector<LogConcaveFn> fns = {
      LogConcaveFn::indicator(k), LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(1.5)),
      LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(2.0)), LogConcaveFn::gaussian(2, 0.7)};
  numeric::Rng rng(17);
  for (const auto& f : fns) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = random_point(rng, 2, 1.5);
      const Vector y = random_point(rng, 2, 1.5);
      const double l = uniform(rng, 0.0, 1.0);
      CHECK(f(l * x + (1 - l) * y) >= std::pow(f(x), l) * std::pow(f(y), 1 - l) - 1e-12);
    }
  }
}

TEST_CASE("integrals") {
  CHECK(integral(LogConcaveFn::indicator(ConvexBody(box(2, -1, 1)))).value == doctest::Approx(4.0));
  const auto e = integral(LogConcaveFn::exp_neg_support_pow(ConvexBody::ball(2, 1.0), Exponent::finite(1.0)));
  CHECK(e.value == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
  CHECK(integral(LogConcaveFn::gaussian(2, 1.0)).value == doctest::Approx(2.0 * M_PI));

  // Closed forms against Monte Carlo over the bounding cube.
  const ConvexBody k = center(ConvexBody(random_polytope(2, 9, 44)));
  for (const auto& f : {LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(2.0)),
                        LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(1.5))}) {
    const Estimate closed = integral(f);
    const auto v = [f](const Vector& x) { return f.potential(x); };
    const auto grid = LogConcaveFn::from_potential(2, v, f.bounding_radius(), "copy");
    const Estimate mc = integral(grid, 400000, 3);
    CHECK(std::abs(mc.value - closed.value) <= 4.0 * mc.sigma + 1e-9);
  }
  CHECK_THROWS_AS(LogConcaveFn::from_potential(1, [](const Vector&) { return 0.0; }, kInf, "flat"), Error);
}

TEST_CASE("sup norm and barycenters") {
  const auto f = LogConcaveFn::exp_neg_support_pow(ConvexBody::ball(2, 1.0), Exponent::finite(1.0));
  CHECK(sup_norm(f) == 1.0);
  CHECK(barycenter_fn(f).value.norm() <= 1e-12);

  const auto simplex = LogConcaveFn::indicator(
      ConvexBody(Polytope::from_vertices({make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})})));
  const auto b = barycenter_fn(simplex).value;
  CHECK(b(0) == doctest::Approx(1.0 / 3.0));
  CHECK(b(1) == doctest::Approx(1.0 / 3.0));
  CHECK(barycenter_fn(LogConcaveFn::indicator(ConvexBody(box(2, -1, 1)))).value.norm() <= 1e-12);

  const auto shifted = LogConcaveFn::from_potential(
      1, [](const Vector& x) { return 0.5 * (x(0) - 1.0) * (x(0) - 1.0) + 2.0; }, 12.0, "shifted");
  CHECK(sup_norm(shifted) == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
  const VectorEstimate sb = barycenter_fn(shifted, 400000, 1);
  CHECK(std::abs(sb.value(0) - 1.0) <= 4.0 * sb.sigma(0));

  // Family barycenters against Monte Carlo on the potential.
  const ConvexBody k(random_polytope(2, 6, 77));
  for (const auto& g : {LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(2.0)),
                        LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(1.0))}) {
    const VectorEstimate closed = barycenter_fn(g, 400000, 2);
    const auto copy =
        LogConcaveFn::from_potential(2, [g](const Vector& x) { return g.potential(x); }, g.bounding_radius(), "copy", 1.0);
    const VectorEstimate mc = barycenter_fn(copy, 400000, 3);
    for (int i = 0; i < 2; ++i) {
      const double s = std::hypot(closed.sigma(i), mc.sigma(i));
      CHECK(std::abs(closed.value(i) - mc.value(i)) <= 4.0 * s + 1e-9);
    }
  }
}

TEST_CASE("Asplund product") {
  const auto unit = LogConcaveFn::indicator(interval(0, 1));
  const auto sum = asplund(unit, unit);
  REQUIRE(sum.family() == Family::Indicator);
  for (double x : {-0.1, 0.0, 1.0, 1.99, 2.0, 2.01}) {
    CHECK(sum(make_vector({x})) == ((x >= 0.0 && x <= 2.0) ? 1.0 : 0.0));
  }

  const ConvexBody k = center(ConvexBody(random_polytope(2, 8, 90)));
  for (double p : {1.0, 2.0, 3.0}) {
    const auto f = LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(p));
    const auto closed = asplund(f, f);
    CHECK(closed.family() == Family::ExpNegSupportPow);
    const auto expected = LogConcaveFn::exp_neg_support_pow(scale(k, std::pow(2.0, 1.0 / p - 1.0)), Exponent::finite(p));
    const auto numeric = asplund_numeric(f, f);
    numeric::Rng rng(static_cast<std::uint64_t>(p));
    for (int i = 0; i < 20; ++i) {
      const Vector x = random_point(rng, 2, 1.0);
      CHECK(closed(x) == doctest::Approx(expected(x)).epsilon(1e-8));
      CHECK(std::abs(numeric(x) - closed(x)) <= 1e-3);
    }
  }

  // Gauge family: f * g = e^{-||x||^p_{K +_q L} / p}.
  const ConvexBody l = center(ConvexBody(random_polytope(2, 6, 91)));
  const auto f = LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(2.0));
  const auto g = LogConcaveFn::exp_neg_gauge_pow(l, Exponent::finite(2.0));
  const auto fg = asplund(f, g);
  const auto fg_num = asplund_numeric(f, g);
  numeric::Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_point(rng, 2, 1.5);
    CHECK(std::abs(fg(x) - fg_num(x)) <= 1e-3);
  }

  const auto gs = asplund(LogConcaveFn::gaussian(1, 1.0), LogConcaveFn::gaussian(1, 2.0));
  CHECK(gs.variance() == doctest::Approx(3.0));
  CHECK_THROWS_AS(asplund(unit, LogConcaveFn::gaussian(2, 1.0)), Error);
}

TEST_CASE("convolution") {
  const auto sq = LogConcaveFn::indicator(ConvexBody(box(2, -1, 1)));
  CHECK(convolution_at(sq, sq, Vector::Zero(2)).value == doctest::Approx(4.0));
  const auto g = LogConcaveFn::gaussian(1, 1.0);
  CHECK(convolution_at(g, g, Vector::Zero(1)).value == doctest::Approx(std::sqrt(M_PI)));
  const auto unit = LogConcaveFn::indicator(interval(0, 1));
  CHECK(convolution_at(unit, unit, make_vector({0.5})).value == doctest::Approx(0.5));
  CHECK(convolution_at(unit, unit, make_vector({3.0})).value == 0.0);

  // Monte Carlo path against the Gaussian closed form.
  const auto gq = LogConcaveFn::from_potential(1, [](const Vector& x) { return 0.5 * x.squaredNorm(); }, 9.0, "g", 1.0);
  const Estimate mc = convolution_at(gq, gq, make_vector({0.7}), 400000, 5);
  const double exact = convolution_at(g, g, make_vector({0.7})).value;
  CHECK(std::abs(mc.value - exact) <= 4.0 * mc.sigma);
  CHECK_THROWS_AS(convolution_at(sq, g, Vector::Zero(2)), Error);
}

TEST_CASE("Legendre transform") {
  GridSearch s;
  s.center = Vector::Zero(2);
  s.radius = 6.0;
  const auto half_sq = [](const Vector& y) { return 0.5 * y.squaredNorm(); };
  numeric::Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 2, 2.0);
    CHECK(legendre(half_sq, x, s) == doctest::Approx(0.5 * x.squaredNorm()).epsilon(1e-6));
  }

  const ConvexBody k = center(ConvexBody(random_polytope(2, 7, 13)));
  const double p = 3.0;
  const double q = p / (p - 1.0);
  const ConvexBody kp = polar(k);
  const auto gauge_pow = [&](const Vector& y) { return std::pow(k.gauge(y), p) / p; };
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 2, 1.0);
    const double expected = std::pow(kp.gauge(x), q) / q;
    CHECK(std::abs(legendre(gauge_pow, x, s) - expected) <= 1e-4 * (1.0 + expected));
  }

  // Convex indicator of K: the transform is the support function.
  const auto ind = [&](const Vector& y) { return k.contains(y) ? 0.0 : kInf; };
  GridSearch small = s;
  small.radius = 1.2 * k.bounding_radius();
  small.points = 33;
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 2, 2.0);
    CHECK(std::abs(legendre(ind, x, small) - k.support(x)) <= 1e-6 * (1.0 + x.norm()));
  }

  // A linear potential has no conjugate at x != slope.
  const auto linear = [](const Vector& y) { return y(0); };
  CHECK_THROWS_AS(legendre(linear, make_vector({3.0, 0.0}), s), Error);
}

TEST_CASE("Legendre involution") {
  GridSearch s;
  s.center = Vector::Zero(1);
  s.radius = 20.0;
  s.points = 65;
  GridSearch outer = s;
  outer.radius = 3.0;
  const auto v = [](const Vector& y) { return std::pow(std::abs(y(0)), 1.5) / 1.5 + 0.3 * y(0); };
  const auto vstar = [&](const Vector& x) { return legendre(v, x, s); };
  numeric::Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_point(rng, 1, 1.5);
    CHECK(std::abs(legendre(vstar, x, outer) - v(x)) <= 1e-3);
  }
}

TEST_CASE("polar functions") {
  const auto ball = LogConcaveFn::indicator(ConvexBody::ball(3, 1.0));
  const auto pb = polar_fn(ball);
  numeric::Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 3, 2.0);
    CHECK(pb(x) == doctest::Approx(std::exp(-x.norm())));
  }
  const auto gauss = polar_fn(LogConcaveFn::gaussian(2, 1.0));
  CHECK(gauss.family() == Family::Gaussian);
  CHECK(gauss.variance() == 1.0);

  // (e^{-||x||_K^p/p})° = e^{-||x||_{K°}^q/q}, also through the Legendre grid.
  const ConvexBody k = center(ConvexBody(random_polytope(2, 7, 31)));
  const auto f = LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(2.0));
  const auto fc = polar_fn(f);
  const auto fn = polar_fn_numeric(f);
  const ConvexBody kp = polar(k);
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 2, 1.0);
    CHECK(fc(x) == doctest::Approx(std::exp(-0.5 * std::pow(kp.gauge(x), 2.0))));
    CHECK(std::abs(fn(x) - fc(x)) <= 1e-4);
  }

  // e^{-h_K^p} and e^{-||x||^q_{p^{1/p}K}/q} are polar to each other.
  const auto h = LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(3.0));
  const auto hn = polar_fn_numeric(h);
  const auto hc = polar_fn(h);
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(rng, 2, 1.0);
    CHECK(std::abs(hn(x) - hc(x)) <= 1e-4);
  }
  CHECK(polar_fn(polar_fn(LogConcaveFn::indicator(k))).family() == Family::Indicator);

  // (f * g)° = f° g° for indicators.
  const ConvexBody l = center(ConvexBody(random_polytope(2, 5, 32)));
  const auto ik = LogConcaveFn::indicator(k);
  const auto il = LogConcaveFn::indicator(l);
  const auto lhs = polar_fn(asplund(ik, il));
  const auto fk = polar_fn(ik);
  const auto fl = polar_fn(il);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_point(rng, 2, 3.0);
    CHECK(lhs(x) == doctest::Approx(fk(x) * fl(x)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(polar_fn(LogConcaveFn::indicator(translate(k, make_vector({4, 0})))), Error);
}

TEST_CASE("entropy") {
  CHECK(entropy(LogConcaveFn::indicator(ConvexBody(box(2, -1, 1)))).value == 0.0);
  const auto laplace = LogConcaveFn::exp_neg_support_pow(interval(-1, 1), Exponent::finite(1.0));
  CHECK(entropy(laplace).value == doctest::Approx(1.0).epsilon(1e-9));
  for (int n = 1; n <= 3; ++n) {
    CHECK(entropy(LogConcaveFn::gaussian(n, 1.0)).value == doctest::Approx(0.5 * n).epsilon(1e-9));
  }
  for (double p : {1.0, 2.0, 3.5}) {
    const ConvexBody k(random_polytope(2, 6, 5));
    CHECK(entropy(LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(p))).value ==
          doctest::Approx(2.0 / p).epsilon(1e-9));
    CHECK(entropy(LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(p))).value ==
          doctest::Approx(2.0 / p).epsilon(1e-9));
  }
  // Monte Carlo path.
  const auto g = LogConcaveFn::from_potential(2, [](const Vector& x) { return 0.5 * x.squaredNorm(); }, 9.0, "g", 1.0);
  const Estimate e = entropy(g, 400000, 4);
  CHECK(std::abs(e.value - 1.0) <= 4.0 * e.sigma);
}

TEST_CASE("Ball bodies") {
  const ConvexBody k = center(ConvexBody(random_polytope(2, 8, 61)));
  const auto ind = LogConcaveFn::indicator(k);
  const auto e1 = LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(1.0));
  numeric::Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    const Vector x = numeric::random_direction(rng, 2) * uniform(rng, 0.1, 2.0);
    CHECK(ball_body_gauge(ind, x) == doctest::Approx(k.gauge(x)).epsilon(1e-9));
    CHECK(ball_body_gauge(e1, x) == doctest::Approx(k.gauge(x) / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(ball_body_gauge(e1, 2.0 * x) == doctest::Approx(2.0 * ball_body_gauge(e1, x)).epsilon(1e-9));
  }
  const auto e3 = LogConcaveFn::exp_neg_gauge_pow(ConvexBody(random_polytope(3, 10, 62)), Exponent::finite(1.0));
  const Vector x = make_vector({0.3, -0.2, 0.5});
  CHECK(ball_body_gauge(e3, x) == doctest::Approx(e3.body()->gauge(x) / std::cbrt(6.0)).epsilon(1e-9));
  CHECK(ball_body_gauge(e3, Vector::Zero(3)) == 0.0);

  const auto off = LogConcaveFn::indicator(ConvexBody(box(2, 1, 2)));
  CHECK_THROWS_AS(ball_body_gauge(off, make_vector({1, 0})), Error);

  // |K_f| = int f / f(0).
  for (const auto& f : {ind, LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(1.0)),
                        LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(2.0))}) {
    const auto kf = ball_body(f);
    const auto v = volume::volume(kf, 20000, 7);
    const Estimate in = integral(f);
    CHECK(std::abs(v.value - in.value) <= 4.0 * std::hypot(v.sigma, in.sigma) + 1e-9);
  }
}

TEST_CASE("level sets") {
  const ConvexBody k = center(ConvexBody(random_polytope(2, 8, 71)));
  const auto h = LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(1.0));
  const ConvexBody kp = polar(k);
  const auto ls = level_set(h, std::exp(-1.0));
  numeric::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Vector u = numeric::random_direction(rng, 2);
    CHECK(ls.body.gauge(u) == doctest::Approx(kp.gauge(u)).epsilon(1e-9));
  }
  const auto ind = LogConcaveFn::indicator(k);
  for (double t : {0.1, 0.5, 1.0}) {
    const Vector u = numeric::random_direction(rng, 2);
    CHECK(level_set(ind, t).body.gauge(u) == doctest::Approx(k.gauge(u)));
  }
  CHECK_THROWS_AS(level_set(h, 1.5), Error);
  CHECK_THROWS_AS(level_set(h, 0.0), Error);

  // Nesting, and the generic bisection route against the closed form.
  const auto g = LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(2.0));
  const auto copy = LogConcaveFn::from_potential(2, [g](const Vector& x) { return g.potential(x); }, g.bounding_radius(),
                                                 "copy", 1.0);
  const auto hi = level_set(g, 0.9);
  const auto lo = level_set(g, 0.1);
  const auto lo_generic = level_set(copy, 0.1);
  for (int i = 0; i < 30; ++i) {
    const Vector u = numeric::random_direction(rng, 2);
    CHECK(hi.body.gauge(u) >= lo.body.gauge(u));
    CHECK(lo_generic.body.gauge(u) == doctest::Approx(lo.body.gauge(u)).epsilon(1e-9));
  }
}

TEST_CASE("function JSON") {
  const ConvexBody k(random_polytope(2, 6, 4));
  for (const auto& f : {LogConcaveFn::indicator(k), LogConcaveFn::exp_neg_support_pow(k, Exponent::finite(2.5)),
                        LogConcaveFn::exp_neg_gauge_pow(k, Exponent::finite(1.0)), LogConcaveFn::gaussian(3, 2.0)}) {
    const auto j = to_json(f);
    const auto back = fn_from_json(j);
    CHECK(back.family() == f.family());
    CHECK(back.dim() == f.dim());
    CHECK(to_json(back) == j);
  }
  const auto grid = LogConcaveFn::from_potential(1, [](const Vector& x) { return x.squaredNorm(); }, 8.0, "grid");
  CHECK_THROWS_AS(fn_from_json(to_json(grid)), Error);
}
