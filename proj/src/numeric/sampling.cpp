#include <cmath>
#include <limits>

#include "polarcalc/numeric.hpp"

namespace polarcalc::numeric {

Vector random_direction(Rng& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) u(i) = gauss(rng);
    norm = u.norm();
  } while (norm < 1e-12);
  return u / norm;
}

Vector random_in_cube(Rng& rng, int n, double r) {
  std::uniform_real_distribution<double> uni(-r, r);
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = uni(rng);
  return x;
}

namespace {

Estimate mean_of(double sum, double sum_sq, std::uint64_t count) {
  if (count == 0) return {};
  const double n = static_cast<double>(count);
  const double mean = sum / n;
  const double var = count > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

Estimate MomentAccumulator::mean_a() const { return mean_of(sum_a, sum_aa, count); }
Estimate MomentAccumulator::mean_b() const { return mean_of(sum_b, sum_bb, count); }

Estimate MomentAccumulator::ratio() const {
  if (count < 2 || sum_b == 0.0) return {0.0, std::numeric_limits<double>::infinity()};
  const double n = static_cast<double>(count);
  const double ma = sum_a / n;
  const double mb = sum_b / n;
  const double r = ma / mb;
  const double vaa = (sum_aa - n * ma * ma) / (n - 1.0);
  const double vbb = (sum_bb - n * mb * mb) / (n - 1.0);
  const double vab = (sum_ab - n * ma * mb) / (n - 1.0);
  const double var = (vaa - 2.0 * r * vab + r * r * vbb) / (mb * mb * n);
  return {r, std::sqrt(std::max(0.0, var))};
}

}  // namespace polarcalc::numeric
