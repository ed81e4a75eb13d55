#pragma once

// Numerical kernels shared by the geometry and function modules: convex
// minimisation, 1-D quadrature and seeded Monte Carlo sharding.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "polarcalc/core.hpp"

namespace polarcalc::numeric {

struct Minimum {
  Vector argmin;
  double value = 0.0;
};

/// Minimises a convex function of one variable on the whole line. The bracket
/// is grown geometrically from `start` with initial step `scale`; golden
/// section then shrinks it to `rel_tol * scale`.
Minimum minimize_convex_1d(const std::function<double(double)>& f, double start, double scale,
                           double rel_tol = 1e-13);

/// Golden-section minimisation of a convex function on the closed interval [lo, hi].
Minimum minimize_convex_interval(const std::function<double(double)>& f, double lo, double hi,
                                 double rel_tol = 1e-14);

/// Minimises a convex function on R^dim by nested golden-section search over
/// coordinates. Partial minima of a jointly convex function are convex, so the
/// nesting is exact up to the 1-D tolerance. Intended for dim <= 3.
Minimum minimize_convex(const std::function<double(const Vector&)>& f, const Vector& start,
                        double scale, double rel_tol = 1e-12);

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double* error_estimate = nullptr);

/// Adaptive integration on [a, b] with forced breakpoints (e.g. known kinks).
double integrate_pieces(const std::function<double(double)>& f, std::vector<double> breaks,
                        double rel_tol = 1e-12);

using Rng = std::mt19937_64;

/// Number of shards used for Monte Carlo work; results are reduced in shard
/// order so estimates do not depend on scheduling.
inline constexpr int kShards = 8;

/// Runs `work(rng, count, shard)` once per shard with a generator seeded from
/// derive_seed(seed, shard). Returns the per-shard results in shard order.
template <class T>
std::vector<T> run_shards(std::uint64_t seed, std::uint64_t samples,
                          const std::function<T(Rng&, std::uint64_t, int)>& work);

/// Uniform direction on the unit sphere S^{n-1}.
Vector random_direction(Rng& rng, int n);

/// Uniform point in the cube [-r, r]^n.
Vector random_in_cube(Rng& rng, int n, double r);

/// Streaming first and second moments for ratio estimators.
struct MomentAccumulator {
  std::uint64_t count = 0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  double sum_aa = 0.0;
  double sum_bb = 0.0;
  double sum_ab = 0.0;

  void add(double a, double b) {
    ++count;
    sum_a += a;
    sum_b += b;
    sum_aa += a * a;
    sum_bb += b * b;
    sum_ab += a * b;
  }
  void merge(const MomentAccumulator& o) {
    count += o.count;
    sum_a += o.sum_a;
    sum_b += o.sum_b;
    sum_aa += o.sum_aa;
    sum_bb += o.sum_bb;
    sum_ab += o.sum_ab;
  }
  /// Sample mean of a with its standard error.
  Estimate mean_a() const;
  Estimate mean_b() const;
  /// E[a]/E[b] with delta-method standard error.
  Estimate ratio() const;
};

/// Surface area of the unit sphere S^{n-1}.
double sphere_area(int n);
/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(int n);
/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

}  // namespace polarcalc::numeric

#include "polarcalc/numeric_impl.hpp"
