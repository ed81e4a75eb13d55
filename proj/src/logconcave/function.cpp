#include <cmath>
#include <limits>

#include "polarcalc/logconcave.hpp"
#include "polarcalc/numeric.hpp"
#include "polarcalc/volume.hpp"

namespace polarcalc::logconcave {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Super-level set {f >= e^{-kCut} sup f} used for bounding radii.
constexpr double kCut = 40.0;

void require_finite_origin_body(const ConvexBody& k, Exponent p, const char* what) {
  if (p.is_infinite()) throw Error(ErrorCode::BadExponent, std::string(what) + " needs a finite exponent");
  if (!k.contains_origin_interior()) {
    throw Error(ErrorCode::OriginNotInterior, std::string(what) + " needs 0 in the interior of the body");
  }
}

// Ratio int r^{n-1} phi(r) e^{-phi(r)} dr / int r^{n-1} e^{-phi(r)} dr for a radial profile.
double radial_entropy(int n, const std::function<double(double)>& phi) {
  auto num = [&](double r) { return r > 0 ? std::pow(r, n - 1) * phi(r) * std::exp(-phi(r)) : 0.0; };
  auto den = [&](double r) { return r > 0 ? std::pow(r, n - 1) * std::exp(-phi(r)) : (n == 1 ? 1.0 : 0.0); };
  return numeric::integrate(num, 0.0, kInf, 1e-13) / numeric::integrate(den, 0.0, kInf, 1e-13);
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::Indicator:
      return "indicator";
    case Family::ExpNegSupportPow:
      return "exp_neg_support_pow";
    case Family::ExpNegGaugePow:
      return "exp_neg_gauge_pow";
    case Family::Gaussian:
      return "gaussian";
    case Family::Grid:
      return "grid";
  }
  return "unknown";
}

LogConcaveFn LogConcaveFn::indicator(ConvexBody k) {
  LogConcaveFn f;
  f.dim_ = k.dim();
  f.family_ = Family::Indicator;
  f.radius_ = k.bounding_radius();
  f.sup_ = 1.0;
  f.body_ = std::make_shared<const ConvexBody>(std::move(k));
  return f;
}

LogConcaveFn LogConcaveFn::exp_neg_support_pow(ConvexBody k, Exponent p) {
  require_finite_origin_body(k, p, "e^{-h_K^p}");
  LogConcaveFn f;
  f.dim_ = k.dim();
  f.family_ = Family::ExpNegSupportPow;
  f.p_ = p;
  f.radius_ = std::pow(kCut, p.reciprocal()) / k.inner_radius();
  f.sup_ = 1.0;
  f.body_ = std::make_shared<const ConvexBody>(std::move(k));
  return f;
}

LogConcaveFn LogConcaveFn::exp_neg_gauge_pow(ConvexBody k, Exponent p) {
  require_finite_origin_body(k, p, "e^{-||x||_K^p/p}");
  LogConcaveFn f;
  f.dim_ = k.dim();
  f.family_ = Family::ExpNegGaugePow;
  f.p_ = p;
  f.radius_ = std::pow(kCut * p.value(), p.reciprocal()) * k.bounding_radius();
  f.sup_ = 1.0;
  f.body_ = std::make_shared<const ConvexBody>(std::move(k));
  return f;
}

LogConcaveFn LogConcaveFn::gaussian(int n, double variance) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(variance > 0.0)) throw Error(ErrorCode::InvalidArgument, "variance must be positive");
  LogConcaveFn f;
  f.dim_ = n;
  f.family_ = Family::Gaussian;
  f.p_ = Exponent::finite(2.0);
  f.variance_ = variance;
  f.radius_ = std::sqrt(2.0 * kCut * variance);
  f.sup_ = 1.0;
  return f;
}

LogConcaveFn LogConcaveFn::from_potential(int n, ScalarField v, double radius, std::string description,
                                          double sup) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::NotIntegrable, "no bounding radius");
  LogConcaveFn f;
  f.dim_ = n;
  f.family_ = Family::Grid;
  f.potential_ = std::move(v);
  f.radius_ = radius;
  f.sup_ = sup;
  f.description_ = std::move(description);
  return f;
}

double LogConcaveFn::potential(const Vector& x) const {
  if (x.size() != dim_) throw Error(ErrorCode::DimMismatch, "point dimension differs from function dimension");
  switch (family_) {
    case Family::Indicator:
      return body_->contains(x) ? 0.0 : kInf;
    case Family::ExpNegSupportPow:
      return std::pow(std::max(0.0, body_->support(x)), p_.value());
    case Family::ExpNegGaugePow:
      return std::pow(body_->gauge(x), p_.value()) / p_.value();
    case Family::Gaussian:
      return x.squaredNorm() / (2.0 * variance_);
    case Family::Grid:
      return potential_(x);
  }
  return kInf;
}

double LogConcaveFn::operator()(const Vector& x) const {
  const double v = potential(x);
  return v == kInf ? 0.0 : std::exp(-v);
}

std::string LogConcaveFn::description() const {
  switch (family_) {
    case Family::Indicator:
      return "chi(" + body_->description() + ")";
    case Family::ExpNegSupportPow:
      return "exp(-h^" + p_.to_string() + ", " + body_->description() + ")";
    case Family::ExpNegGaugePow:
      return "exp(-||x||^" + p_.to_string() + "/p, " + body_->description() + ")";
    case Family::Gaussian:
      return "gaussian(var=" + std::to_string(variance_) + ")";
    case Family::Grid:
      return description_;
  }
  return description_;
}

double sup_norm(const LogConcaveFn& f) {
  if (f.sup_ >= 0.0) return f.sup_;
  GridSearch s;
  s.center = Vector::Zero(f.dim());
  s.radius = f.bounding_radius();
  s.rounds = 30;
  const GridMax m = grid_maximize([&](const Vector& x) { return -f.potential(x); }, s);
  return std::exp(m.value);
}

Estimate integral(const LogConcaveFn& f, std::uint64_t samples, std::uint64_t seed) {
  const int n = f.dim();
  switch (f.family()) {
    case Family::Indicator:
      return volume::volume(*f.body(), samples, seed).estimate();
    case Family::ExpNegSupportPow: {
      const auto v = volume::volume(geometry::polar(*f.body()), samples, seed);
      return std::tgamma(1.0 + n / f.exponent().value()) * v.estimate();
    }
    case Family::ExpNegGaugePow: {
      const double p = f.exponent().value();
      const auto v = volume::volume(*f.body(), samples, seed);
      return std::pow(p, n / p) * std::tgamma(1.0 + n / p) * v.estimate();
    }
    case Family::Gaussian:
      return {std::pow(2.0 * M_PI * f.variance(), 0.5 * n), 0.0};
    case Family::Grid:
      break;
  }
  const double r = f.bounding_radius();
  auto parts = numeric::run_shards<numeric::MomentAccumulator>(
      seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
        numeric::MomentAccumulator acc;
        for (std::uint64_t i = 0; i < count; ++i) acc.add(f(numeric::random_in_cube(rng, n, r)), 0.0);
        return acc;
      });
  numeric::MomentAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return std::pow(2.0 * r, n) * total.mean_a();
}

VectorEstimate barycenter_fn(const LogConcaveFn& f, std::uint64_t samples, std::uint64_t seed) {
  const int n = f.dim();
  switch (f.family()) {
    case Family::Indicator:
      return geometry::barycenter(*f.body(), samples, seed);
    case Family::ExpNegSupportPow: {
      const double p = f.exponent().value();
      const double c = std::tgamma(1.0 + (n + 1) / p) / std::tgamma(1.0 + n / p);
      auto b = geometry::barycenter(geometry::polar(*f.body()), samples, seed);
      return {c * b.value, c * b.sigma};
    }
    case Family::ExpNegGaugePow: {
      const double p = f.exponent().value();
      const double c = std::pow(p, 1.0 / p) * std::tgamma(1.0 + (n + 1) / p) / std::tgamma(1.0 + n / p);
      auto b = geometry::barycenter(*f.body(), samples, seed);
      return {c * b.value, c * b.sigma};
    }
    case Family::Gaussian:
      return {Vector::Zero(n), Vector::Zero(n)};
    case Family::Grid:
      break;
  }
  const double r = f.bounding_radius();
  VectorEstimate out{Vector::Zero(n), Vector::Zero(n)};
  for (int i = 0; i < n; ++i) {
    auto parts = numeric::run_shards<numeric::MomentAccumulator>(
        seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
          numeric::MomentAccumulator acc;
          for (std::uint64_t s = 0; s < count; ++s) {
            const Vector x = numeric::random_in_cube(rng, n, r);
            const double fx = f(x);
            acc.add(x(i) * fx, fx);
          }
          return acc;
        });
    numeric::MomentAccumulator total;
    for (const auto& p : parts) total.merge(p);
    const Estimate e = total.ratio();
    out.value(i) = e.value;
    out.sigma(i) = e.sigma;
  }
  return out;
}

Estimate entropy(const LogConcaveFn& f, std::uint64_t samples, std::uint64_t seed) {
  const int n = f.dim();
  switch (f.family()) {
    case Family::Indicator:
      return {0.0, 0.0};
    case Family::ExpNegSupportPow: {
      const double p = f.exponent().value();
      return {radial_entropy(n, [p](double r) { return std::pow(r, p); }), 0.0};
    }
    case Family::ExpNegGaugePow: {
      const double p = f.exponent().value();
      return {radial_entropy(n, [p](double r) { return std::pow(r, p) / p; }), 0.0};
    }
    case Family::Gaussian:
      return {radial_entropy(n, [](double r) { return 0.5 * r * r; }), 0.0};
    case Family::Grid:
      break;
  }
  const double r = f.bounding_radius();
  auto parts = numeric::run_shards<numeric::MomentAccumulator>(
      seed, samples, [&](numeric::Rng& rng, std::uint64_t count, int) {
        numeric::MomentAccumulator acc;
        for (std::uint64_t s = 0; s < count; ++s) {
          const double v = f.potential(numeric::random_in_cube(rng, n, r));
          if (v == kInf) {
            acc.add(0.0, 0.0);
          } else {
            const double fx = std::exp(-v);
            acc.add(v * fx, fx);
          }
        }
        return acc;
      });
  numeric::MomentAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return total.ratio();
}

EpigraphLevelSet level_set(const LogConcaveFn& f, double t) {
  if (t > 1.0) throw Error(ErrorCode::EmptyLevelSet, "level t must not exceed 1");
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "level t must be positive");
  const int n = f.dim();
  const double depth = -std::log(t);
  auto shrink = [&](const ConvexBody& k, double factor) {
    if (!(factor > 0.0)) throw Error(ErrorCode::DegenerateInstance, "level set at t = 1 is a single point");
    return geometry::scale(k, factor);
  };
  switch (f.family()) {
    case Family::Indicator:
      return {t, *f.body()};
    case Family::ExpNegSupportPow:
      return {t, shrink(geometry::polar(*f.body()), std::pow(depth, f.exponent().reciprocal()))};
    case Family::ExpNegGaugePow:
      return {t, shrink(*f.body(), std::pow(f.exponent().value() * depth, f.exponent().reciprocal()))};
    case Family::Gaussian:
      return {t, shrink(ConvexBody::ball(n, 1.0), std::sqrt(2.0 * f.variance() * depth))};
    case Family::Grid:
      break;
  }
  const double level = -std::log(sup_norm(f)) + depth;
  const double v0 = f.potential(Vector::Zero(n));
  if (!(v0 < level)) {
    throw Error(ErrorCode::OriginNotInterior, "the origin is not interior to the level set");
  }
  auto fp = std::make_shared<const LogConcaveFn>(f);
  const double radius = f.bounding_radius() * std::sqrt(static_cast<double>(n));
  auto member = [fp, level](const Vector& x) { return fp->potential(x) <= level; };
  geometry::GaugeOracle g;
  g.dim = n;
  g.gauge = [member, radius](const Vector& x) { return geometry::gauge_by_bisection(member, x, radius); };
  g.bounding_radius = radius;
  double inner = kInf;
  for (int i = 0; i < n; ++i) {
    for (double s : {-1.0, 1.0}) {
      Vector e = Vector::Zero(n);
      e(i) = s;
      inner = std::min(inner, 1.0 / g.gauge(e));
    }
  }
  g.inner_radius = 0.5 * inner / std::sqrt(static_cast<double>(n));
  g.description = "level(" + f.description() + ", t=" + std::to_string(t) + ")";
  return {t, ConvexBody(std::move(g))};
}

nlohmann::json to_json(const LogConcaveFn& f) {
  nlohmann::json j = {{"family", to_string(f.family())}, {"dim", f.dim()}};
  if (f.body()) j["body"] = geometry::to_json(*f.body());
  if (f.family() == Family::ExpNegSupportPow || f.family() == Family::ExpNegGaugePow) {
    j["p"] = f.exponent().to_string();
  }
  if (f.family() == Family::Gaussian) j["variance"] = f.variance();
  if (f.family() == Family::Grid) j["description"] = f.description();
  return j;
}

LogConcaveFn fn_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  auto exponent = [&] {
    const auto& p = j.at("p");
    return p.is_string() ? Exponent::parse(p.get<std::string>()) : Exponent::finite(p.get<double>());
  };
  if (family == "indicator") return LogConcaveFn::indicator(geometry::body_from_json(j.at("body")));
  if (family == "exp_neg_support_pow") {
    return LogConcaveFn::exp_neg_support_pow(geometry::body_from_json(j.at("body")), exponent());
  }
  if (family == "exp_neg_gauge_pow") {
    return LogConcaveFn::exp_neg_gauge_pow(geometry::body_from_json(j.at("body")), exponent());
  }
  if (family == "gaussian") return LogConcaveFn::gaussian(j.at("dim").get<int>(), j.value("variance", 1.0));
  throw Error(ErrorCode::InvalidArgument, "cannot rebuild a function of family '" + family + "'");
}

}  // namespace polarcalc::logconcave
