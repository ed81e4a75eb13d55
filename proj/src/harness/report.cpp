#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "polarcalc/harness.hpp"

namespace polarcalc::harness {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

nlohmann::json estimate_json(const Estimate& e) { return {{"value", number(e.value)}, {"stderr", number(e.sigma)}}; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::string to_string(Sense s) {
  switch (s) {
    case Sense::AtMost:
      return "<=";
    case Sense::AtLeast:
      return ">=";
    case Sense::Equal:
      return "=";
  }
  return "?";
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json volumes = nlohmann::json::array();
  for (const auto& v : r.volumes) {
    nlohmann::json e = {{"name", v.name}, {"primary", volume::to_json(v.primary)}, {"agree", v.agree},
                        {"resolved", v.resolved}};
    if (v.has_alternate) e["alternate"] = volume::to_json(v.alternate);
    volumes.push_back(std::move(e));
  }
  return {{"check_id", r.check_id},
          {"instance", r.instance},
          {"lhs", estimate_json(r.lhs)},
          {"rhs", estimate_json(r.rhs)},
          {"sense", to_string(r.sense)},
          {"ratio", number(r.ratio)},
          {"verdict", to_string(r.verdict)},
          {"margin_sigmas", number(r.margin_sigmas)},
          {"volumes", volumes}};
}

void judge(CheckReport& r, double exact_tol) {
  const double l = r.lhs.value;
  const double h = r.rhs.value;
  r.ratio = h != 0.0 ? l / h : (l == 0.0 ? 1.0 : kInf);

  const bool resolved =
      std::all_of(r.volumes.begin(), r.volumes.end(), [](const VolumeEntry& v) { return v.resolved; });
  double slack = 0.0;
  switch (r.sense) {
    case Sense::AtMost:
      slack = h - l;
      break;
    case Sense::AtLeast:
      slack = l - h;
      break;
    case Sense::Equal:
      slack = -std::abs(l - h);
      break;
  }
  const double sigma = std::hypot(r.lhs.sigma, r.rhs.sigma);
  if (!resolved) {
    r.verdict = Verdict::Inconclusive;
    r.margin_sigmas = sigma > 0.0 ? slack / sigma : 0.0;
    return;
  }
  if (sigma == 0.0) {
    const double tol = exact_tol * std::max({std::abs(l), std::abs(h), 1.0});
    const bool holds = slack >= -tol;
    r.verdict = holds ? Verdict::Pass : Verdict::Fail;
    r.margin_sigmas = holds ? kInf : -kInf;
    return;
  }
  r.margin_sigmas = slack / sigma;
  if (r.sense == Sense::Equal) {
    r.verdict = r.margin_sigmas >= -3.0 ? Verdict::Pass : Verdict::Fail;
  } else if (r.margin_sigmas >= 3.0) {
    r.verdict = Verdict::Pass;
  } else if (r.margin_sigmas < -3.0) {
    r.verdict = Verdict::Fail;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
}

Estimate measure(CheckReport& r, const std::string& name, const ConvexBody& k, const Budget& b) {
  const std::uint64_t seed = derive_seed(b.seed, 0x100 + r.volumes.size());
  VolumeEntry e;
  e.name = name;
  e.primary = volume::volume(k, b.samples, seed);
  e.alternate = volume::volume_alternate(k, b.samples, seed);
  e.has_alternate = e.alternate.samples > 0;
  if (e.has_alternate) {
    const double s = std::hypot(e.primary.sigma, e.alternate.sigma);
    e.agree = std::abs(e.primary.value - e.alternate.value) <= 3.0 * s + 1e-12 * std::abs(e.primary.value);
  }
  e.resolved = !(e.primary.method == volume::Method::MC && e.primary.value == 0.0);
  r.volumes.push_back(e);
  return e.primary.estimate();
}

std::vector<SummaryRow> summarize(const std::vector<CheckReport>& reports) {
  std::map<std::tuple<std::string, int, std::string>, SummaryRow> rows;
  for (const auto& r : reports) {
    const int n = r.instance.value("n", 0);
    std::string p = "-";
    if (r.instance.contains("p")) p = r.instance["p"].get<std::string>();
    SummaryRow& row = rows[{r.check_id, n, p}];
    if (row.trials == 0) {
      row.check_id = r.check_id;
      row.n = n;
      row.p = p;
      row.min_ratio = r.ratio;
      row.max_ratio = r.ratio;
    }
    ++row.trials;
    row.min_ratio = std::min(row.min_ratio, r.ratio);
    row.max_ratio = std::max(row.max_ratio, r.ratio);
    switch (r.verdict) {
      case Verdict::Pass:
        ++row.pass;
        break;
      case Verdict::Fail:
        ++row.fail;
        break;
      case Verdict::Inconclusive:
        ++row.inconclusive;
        break;
    }
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : rows) out.push_back(row);
  return out;
}

std::string reports_jsonl(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "check_id,n,p,trials,pass,fail,inconclusive,min_ratio,max_ratio\n";
  for (const auto& r : rows) {
    os << r.check_id << ',' << r.n << ',' << r.p << ',' << r.trials << ',' << r.pass << ',' << r.fail << ','
       << r.inconclusive << ',' << r.min_ratio << ',' << r.max_ratio << '\n';
  }
  return os.str();
}

}  // namespace polarcalc::harness
