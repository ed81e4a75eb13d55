#include <cmath>
#include <limits>

#include "doctest.h"
#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

using namespace polarcalc;
using namespace polarcalc::geometry;
using namespace polarcalc::volume;

namespace {

Polytope box(int n, double r) {
  std::vector<Vector> v;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = (mask >> i & 1) ? r : -r;
    v.push_back(x);
  }
  return Polytope::from_vertices(v);
}

Polytope cross(int n) {
  std::vector<Vector> v;
  for (int i = 0; i < n; ++i) {
    for (double s : {-1.0, 1.0}) {
      Vector x = Vector::Zero(n);
      x(i) = s;
      v.push_back(x);
    }
  }
  return Polytope::from_vertices(v);
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

TEST_CASE("exact volumes") {
  CHECK(volume_exact(box(2, 1.0)).value == doctest::Approx(4.0));
  const Polytope simplex = Polytope::from_vertices({make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})});
  CHECK(volume_exact(simplex).value == doctest::Approx(0.5));
  const Polytope hexagon = Polytope::from_vertices({make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1}),
                                                    make_vector({0, -1}), make_vector({1, -1}), make_vector({-1, 1})});
  CHECK(volume_exact(hexagon).value == doctest::Approx(3.0));
  CHECK(volume_exact(hexagon).sigma == 0.0);
  CHECK(volume_exact(hexagon).method == Method::Exact);
  CHECK_THROWS_AS(volume_exact(box(4, 1.0)), Error);
}

TEST_CASE("exact volume scales as lambda^n") {
  const Polytope p = random_polytope(3, 15, 8);
  const double v = volume_exact(p).value;
  CHECK(volume_exact(p.scaled(1.7)).value == doctest::Approx(std::pow(1.7, 3) * v).epsilon(1e-12));
}

TEST_CASE("hit-or-miss Monte Carlo") {
  const VolumeEstimate disk = volume_mc(ConvexBody::ball(2, 1.0), 1000000, 1);
  CHECK(std::abs(disk.value - M_PI) <= 3.0 * disk.sigma);
  CHECK(disk.method == Method::MC);
  CHECK(disk.samples == 1000000);

  const VolumeEstimate full = volume_mc(ConvexBody(box(2, 1.0)), 10000, 2);
  CHECK(full.value == 4.0);
  CHECK(full.sigma == 0.0);

  const VolumeEstimate c3 = volume_mc(ConvexBody(cross(3)), 1000000, 3);
  CHECK(std::abs(c3.value - 8.0 / factorial(3)) <= 3.0 * c3.sigma);
}

TEST_CASE("Monte Carlo agrees with exact volumes on random polygons") {
  int outside = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Polytope p = random_polytope(2, 8, 1000 + s);
    const VolumeEstimate mc = volume_mc(ConvexBody(p), 100000, s);
    if (std::abs(mc.value - volume_exact(p).value) > 3.0 * mc.sigma) ++outside;
  }
  // A 3-sigma excursion has probability ~0.27% per instance.
  CHECK(outside <= 1);
}

TEST_CASE("Gamma route") {
  const ConvexBody disk = ConvexBody::ball(2, 1.0);
  const VolumeEstimate g = gamma_route_integral(disk, Exponent::finite(2.0), 100000, 4);
  CHECK(g.value == doctest::Approx(M_PI).epsilon(1e-9));  // h is constant on the sphere

  const VolumeEstimate sq = volume_polar_gamma(ConvexBody(box(2, 1.0)), 200000, 5);
  CHECK(std::abs(sq.value - 2.0) <= 3.0 * sq.sigma);
  CHECK(sq.method == Method::GammaRoute);

  for (int n = 1; n <= 4; ++n) {
    const VolumeEstimate b = volume_polar_gamma(ConvexBody::ball(n, 2.5), 1000, 6);
    CHECK(b.value == doctest::Approx(std::pow(2.5, -n) * numeric::unit_ball_volume(n)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(volume_polar_gamma(translate(disk, make_vector({2, 0})), 100, 1), Error);

  int outside = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ConvexBody k = center(ConvexBody(random_polytope(2, 9, 2000 + s)));
    const VolumeEstimate route = volume_polar_gamma(k, 100000, s);
    const double exact = volume_exact(*polar(k).as_polytope()).value;
    if (std::abs(route.value - exact) > 3.0 * route.sigma) ++outside;
  }
  CHECK(outside <= 1);
}

TEST_CASE("Gamma-route integral matches one-dimensional quadrature") {
  // n = 1, K = [-a, b]: int e^{-h^p} = (1/b + 1/a) Gamma(1 + 1/p), done directly.
  const ConvexBody k(Polytope::from_vertices({make_vector({-0.5}), make_vector({2.0})}));
  const Exponent p = Exponent::finite(3.0);
  auto f = [](double x) { return std::exp(-std::pow(x > 0 ? 2.0 * x : -0.5 * x, 3.0)); };
  const double quad = numeric::integrate(f, -std::numeric_limits<double>::infinity(), 0.0) +
                      numeric::integrate(f, 0.0, std::numeric_limits<double>::infinity());
  CHECK(gamma_route_integral(k, p, 10, 1).value == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("radial volume of oracle bodies") {
  const Polytope p = random_polytope(2, 10, 71);
  REQUIRE(p.origin_interior());
  const ConvexBody sum = lp_sum(ConvexBody(p), ConvexBody(p), Exponent::finite(3.0));
  const double expected = std::pow(2.0, 2.0 / 3.0) * volume_exact(p).value;
  const VolumeEstimate r = volume::volume(sum, 50000, 9);
  CHECK(std::abs(r.value - expected) <= 3.0 * r.sigma);
  const VolumeEstimate alt = volume_alternate(sum, 200000, 9);
  CHECK(alt.samples == 200000);
  CHECK(std::abs(alt.value - expected) <= 3.0 * alt.sigma);
}

TEST_CASE("gamma ratio") {
  CHECK(gamma_ratio(2, Exponent::finite(1.0)) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(gamma_ratio(1, Exponent::finite(2.0)) == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
  for (int n = 1; n <= 10; ++n) {
    CHECK(gamma_ratio(n, Exponent::infinity()) == 1.0);
    CHECK(std::abs(gamma_ratio(n, Exponent::finite(1.0)) * numeric::binomial(2 * n, n) - 1.0) <= 1e-12);
  }
  double prev = 0.0;
  for (double p : {1.0, 1.5, 2.0, 4.0, 8.0, 100.0}) {
    const double g = gamma_ratio(3, Exponent::finite(p));
    CHECK(g > prev);
    prev = g;
  }
  CHECK(prev < 1.0);
}

TEST_CASE("volume estimate JSON") {
  const auto j = to_json(VolumeEstimate{2.0, 0.1, Method::MC, 100});
  CHECK(j["value"] == 2.0);
  CHECK(j["stderr"] == 0.1);
  CHECK(j["method"] == "mc");
  CHECK(j["samples"] == 100);
}
