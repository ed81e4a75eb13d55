#include <algorithm>
#include <cmath>
#include <limits>

#include "polarcalc/harness.hpp"
#include "polarcalc/numeric.hpp"

namespace polarcalc::harness {
namespace {

void require_same_dim(const LogConcaveFn& f, const LogConcaveFn& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimMismatch, "functions of different dimension");
}

nlohmann::json fn_instance(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b) {
  return {{"n", f.dim()},
          {"f", logconcave::to_json(f)},
          {"g", logconcave::to_json(g)},
          {"samples", b.samples},
          {"seed", b.seed}};
}

Estimate exp_of(const Estimate& e) {
  const double v = std::exp(e.value);
  return {v, v * e.sigma};
}

}  // namespace

Estimate convolution_sup(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b) {
  require_same_dim(f, g);
  const int n = f.dim();
  const std::uint64_t search_samples = std::max<std::uint64_t>(b.samples / 20, 2000);
  const std::uint64_t search_seed = derive_seed(b.seed, 0xc0);
  const auto phi = [&](const Vector& x) {
    const double v = logconcave::convolution_at(f, g, x, search_samples, search_seed).value;
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
  };
  logconcave::GridSearch s;
  s.center = Vector::Zero(n);
  s.radius = f.bounding_radius() + g.bounding_radius();
  s.points = n <= 2 ? 9 : 5;
  s.rounds = 8;
  const auto best = logconcave::grid_maximize(phi, s);
  return logconcave::convolution_at(f, g, best.argmax, b.samples, derive_seed(b.seed, 0xc1));
}

CheckReport check_functional_rs(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b) {
  require_same_dim(f, g);
  const int n = f.dim();
  CheckReport r;
  r.check_id = "functional_rs";
  r.instance = fn_instance(f, g, b);
  const Estimate sf{logconcave::sup_norm(f), 0.0};
  const Estimate sg{logconcave::sup_norm(g), 0.0};
  const Estimate inf_ = logconcave::integral(f, b.samples, derive_seed(b.seed, 1));
  const Estimate ing = logconcave::integral(g, b.samples, derive_seed(b.seed, 2));
  const Estimate star = logconcave::integral(logconcave::asplund(f, g), b.samples, derive_seed(b.seed, 3));
  const Estimate conv = convolution_sup(f, g, b);
  r.lhs = conv * star;
  r.rhs = numeric::binomial(2 * n, n) * ((sf * sg) * (inf_ * ing));
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

CheckReport check_reverse_functional_rs(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b) {
  require_same_dim(f, g);
  const int n = f.dim();
  const Vector zero = Vector::Zero(n);

  const VectorEstimate bf = logconcave::barycenter_fn(f, b.samples, derive_seed(b.seed, 4));
  const VectorEstimate bg = logconcave::barycenter_fn(g, b.samples, derive_seed(b.seed, 5));
  for (int i = 0; i < n; ++i) {
    const double gap = std::abs(bf.value(i) + bg.value(i));
    if (gap > 3.0 * std::hypot(bf.sigma(i), bg.sigma(i)) + 1e-9) {
      throw Error(ErrorCode::HypothesisViolated, "barycenters of f and g are not opposite");
    }
  }
  const double sf = logconcave::sup_norm(f);
  const double sg = logconcave::sup_norm(g);
  if (f(zero) < sf * (1.0 - 1e-9) || g(zero) < sg * (1.0 - 1e-9)) {
    throw Error(ErrorCode::HypothesisViolated, "f and g must peak at the origin");
  }

  CheckReport r;
  r.check_id = "reverse_functional_rs";
  r.instance = fn_instance(f, g, b);
  const Estimate inf_ = logconcave::integral(f, b.samples, derive_seed(b.seed, 1));
  const Estimate ing = logconcave::integral(g, b.samples, derive_seed(b.seed, 2));
  const Estimate star = logconcave::integral(logconcave::asplund(f, g), b.samples, derive_seed(b.seed, 3));
  const Estimate ef = logconcave::entropy(f, b.samples, derive_seed(b.seed, 6));
  const Estimate eg = logconcave::entropy(g, b.samples, derive_seed(b.seed, 7));
  const Estimate exponent{1.0 + ef.value + std::log(sf) + eg.value + std::log(sg), std::hypot(ef.sigma, eg.sigma)};
  const Estimate conv0 = logconcave::convolution_at(f, g, zero, b.samples, derive_seed(b.seed, 8));
  r.instance["entropy_f"] = ef.value + std::log(sf);
  r.instance["entropy_g"] = eg.value + std::log(sg);
  r.lhs = (sf * sg) * (inf_ * ing);
  r.rhs = exp_of(exponent) * (conv0 * star);
  r.sense = Sense::AtMost;
  judge(r);
  return r;
}

}  // namespace polarcalc::harness
