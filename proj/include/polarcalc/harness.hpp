#pragma once

// Executable versions of the inequalities and identities, instance
// generators that respect each statement's hypotheses, and report
// aggregation.
//
// Every check returns a CheckReport comparing lhs with rhs. Exact sides carry
// sigma = 0; Monte Carlo sides carry a standard error, and the verdict only
// calls a violation once it exceeds three combined standard errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "polarcalc/core.hpp"
#include "polarcalc/geometry.hpp"
#include "polarcalc/logconcave.hpp"
#include "polarcalc/volume.hpp"

namespace polarcalc::harness {

using geometry::ConvexBody;
using logconcave::LogConcaveFn;

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

/// Direction of the claim: lhs <= rhs, lhs >= rhs, or lhs = rhs.
enum class Sense { AtMost, AtLeast, Equal };
std::string to_string(Sense s);

/// Every volume in a report, with the second route when one exists.
struct VolumeEntry {
  std::string name;
  volume::VolumeEstimate primary;
  volume::VolumeEstimate alternate;
  bool has_alternate = false;
  /// Routes agree within 3 combined standard errors (true when there is no second route).
  bool agree = true;
  /// False for a Monte Carlo estimate with no hits; the value is then below resolution.
  bool resolved = true;
};

struct CheckReport {
  std::string check_id;
  nlohmann::json instance;
  Estimate lhs;
  Estimate rhs;
  Sense sense = Sense::AtMost;
  double ratio = 0.0;  // lhs / rhs
  Verdict verdict = Verdict::Inconclusive;
  /// Signed slack in the direction of the claim over the combined error
  /// (+inf for exact comparisons that hold).
  double margin_sigmas = 0.0;
  std::vector<VolumeEntry> volumes;
};

nlohmann::json to_json(const CheckReport& r);

/// Fills ratio, verdict and margin_sigmas from lhs, rhs and sense. Exact
/// comparisons allow `exact_tol * max(|lhs|, |rhs|, 1)`; with an error bar a
/// claim passes at +3 sigma, fails below -3 sigma and is Inconclusive in
/// between (Equal: passes within 3 sigma). Any unresolved volume makes the
/// verdict Inconclusive.
void judge(CheckReport& r, double exact_tol = 1e-9);

/// Monte Carlo budget and master seed of a single check.
struct Budget {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

/// Volume of `k` by the best route plus a cross-check route, recorded in `r`.
Estimate measure(CheckReport& r, const std::string& name, const ConvexBody& k, const Budget& b);

// ---------------------------------------------------------------- bodies

/// |K ∩ (x0 + L)| |K - L| <= C(2n, n) |K| |L|.
CheckReport check_rs_two_bodies(const ConvexBody& k, const ConvexBody& l, const Vector& x0, const Budget& b);

/// |K| |L| <= |K - L| |K ∩ L| after moving both bodies to barycenter 0.
CheckReport check_milman_pajor(const ConvexBody& k, const ConvexBody& l, const Budget& b);

/// |(K ∩ L)°| |(K - L)°| <= |K°| |L°|, 0 interior to both.
CheckReport check_volume_polars(const ConvexBody& k, const ConvexBody& l, const Budget& b);

/// |K ∩ L| |conv{K, -L}| <= 2^n |K| |L|, 0 in both.
CheckReport check_rs_convex_hull(const ConvexBody& k, const ConvexBody& l, const Budget& b);

/// |(K - K)°| <= 2^{-n} |K°|.
CheckReport check_firey(const ConvexBody& k, const Budget& b);

/// |(K +_p (-K))°| <= 2^{-n/p} |K°|.
CheckReport check_bm_dual_p(const ConvexBody& k, Exponent p, const Budget& b);

// ------------------------------------------------------------- functions

/// ||f * g||_inf int f⋆g <= C(2n, n) ||f||_inf ||g||_inf int f int g.
CheckReport check_functional_rs(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b);

/// ||f|| ||g|| int f int g <= e^{1 + Ent(f/||f||) + Ent(g/||g||)} (f * g)(0) int f⋆g.
/// Throws HypothesisViolated unless bar(f) = -bar(g) within 3 sigma and both
/// functions peak at the origin.
CheckReport check_reverse_functional_rs(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b);

/// sup_x (f * g)(x) over a coarse-to-fine grid, re-estimated at the maximiser
/// with an independent seed.
Estimate convolution_sup(const LogConcaveFn& f, const LogConcaveFn& g, const Budget& b);

// ------------------------------------------------------ l_p polar volumes

/// |(K ∩_p L)°| |(K +_p (-L))°| >= Gamma(1+n/p)^2 / Gamma(1+2n/p) |K°| |L°|.
/// Throws HypothesisViolated unless bar(K°) = -bar(L°) within 3 sigma.
CheckReport check_rspolar(const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b);

/// The p = 1 case with the constant written as 1 / C(2n, n):
/// |(K ∩ L)°| |(K - L)°| >= C(2n, n)^{-1} |K°| |L°|.
CheckReport check_rspolar_p1(const ConvexBody& k, const ConvexBody& l, const Budget& b);

/// |(K ∩_p L)°| |(K +_p (-L))°| <= C(2n, n) Gamma(1+n/p)^2 / Gamma(1+2n/p) |K°| |L°|.
CheckReport check_rspolar_reverse(const ConvexBody& k, const ConvexBody& l, Exponent p, const Budget& b);

/// For f = e^{-h_K^p}, g = e^{-h_L^p} and L_t = {(u, v) : f((u+v)/√2) g((v-u)/√2) >= t}
/// in R^{2n}: |L_t| >= C(2n, n)^{-1} |P_H L_t| |L_t ∩ H^⊥|, H = last n coordinates.
/// Volumes near t = 1 that fall below Monte Carlo resolution give Inconclusive.
CheckReport check_projection_section(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                     const Budget& b);

/// The matching upper bound |L_t| <= |P_H L_t| |L_t ∩ H^⊥| on centred instances.
CheckReport check_projection_section_upper(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                           const Budget& b);

// ----------------------------------------------------------------- lemmas

/// int psi dmu <= psi(int x psi dmu / int psi dmu) + 1e-9 for a random
/// log-concave psi and a random discrete probability measure.
CheckReport check_jensen(int n, std::uint64_t seed);

/// |K_f| = int f / f(0).
CheckReport check_ball_body_volume(const LogConcaveFn& f, const Budget& b);

/// t^{1/n} K_t ⊂ K_f on `rays` random directions (f must peak at 0).
CheckReport check_level_inclusion(const LogConcaveFn& f, double t, int rays, std::uint64_t seed);

/// Barycenter of the epigraph L = {(x, t) : f(x) >= e^{-t} ||f||} under e^{-t}:
/// x part equals barycenter_fn(f), t part equals 1 + Ent(f/||f||).
/// One report per identity: ids epigraph_barycenter_x and epigraph_barycenter_t.
std::vector<CheckReport> check_epigraph_barycenter(const LogConcaveFn& f, const Budget& b);

/// For f = e^{-h_K^p}, g = e^{-h_L^p} with K°, L° centred, the vector
///   (1/|L~_t|) (int_{K_t} x |K~_{t/f(x)}| dx + int_{K~_t} y |K_{t/g(y)}| dy)
/// vanishes. The literal variant with |K~_{t/g(y)}| in the second term is
/// recorded in the instance.
CheckReport check_centered_level_sets(const ConvexBody& k, const ConvexBody& l, Exponent p, double t,
                                      const Budget& b);

/// Closed-form Asplund product of e^{-h_K^p} with itself against the grid
/// sup-convolution at `points` random points; max abs error <= 1e-3.
CheckReport check_asplund_closed_form(const ConvexBody& k, Exponent p, int points, std::uint64_t seed);

// ------------------------------------------------------------- generators

struct BodyPair {
  ConvexBody k;
  ConvexBody l;
  nlohmann::json instance;
};

/// K = P°, L = Q° with P, Q random polytopes translated to barycenter 0,
/// so that K° and L° are centred.
BodyPair centered_polar_pair(int n, int m, std::uint64_t seed);
/// Two random polytopes with the origin in both interiors.
BodyPair general_pair(int n, int m, std::uint64_t seed);
/// Two random polytopes translated to barycenter 0.
BodyPair centered_pair(int n, int m, std::uint64_t seed);
/// The simplex conv{0, e_1, ..., e_n} (origin at a vertex); `centered` moves its barycenter to 0.
ConvexBody simplex(int n, bool centered);
/// conv(P ∪ -P) for a random point cloud P.
ConvexBody symmetric_body(int n, int m, std::uint64_t seed);

enum class FunctionFamily { Gaussian, Indicator, ExpNegSupport };

struct FunctionPair {
  LogConcaveFn f;
  LogConcaveFn g;
  nlohmann::json instance;
};

/// A pair with opposite barycentres peaking at 0: Gaussians of random
/// variance, indicators of centred polytopes (g of the reflected body), or
/// e^{-h_K}, e^{-h_L} with K°, L° centred.
FunctionPair function_pair(FunctionFamily family, int n, std::uint64_t seed);

// ----------------------------------------------------------------- suites

struct SuiteConfig {
  std::string suite;  // "classical", "theorems" or "lemmas"
  std::vector<int> dims{2};
  std::vector<Exponent> ps{Exponent::finite(1.0), Exponent::finite(2.0), Exponent::infinity()};
  int trials = 10;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
};

std::vector<std::string> suite_names();

/// Deterministic given the config; reports sorted by check id, then by
/// position in the run. Throws InvalidArgument for an unknown suite.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

struct SummaryRow {
  std::string check_id;
  int n = 0;
  std::string p;  // "-" for checks without an exponent
  int trials = 0;
  int pass = 0;
  int fail = 0;
  int inconclusive = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

std::vector<SummaryRow> summarize(const std::vector<CheckReport>& reports);
/// One CheckReport JSON object per line.
std::string reports_jsonl(const std::vector<CheckReport>& reports);
/// Columns check_id,n,p,trials,pass,fail,inconclusive,min_ratio,max_ratio.
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace polarcalc::harness
