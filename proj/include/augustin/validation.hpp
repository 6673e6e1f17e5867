#pragma once

#include "augustin/solve.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace augustin {

// Outcome of one invariant check: the worst violation seen over `samples`
// draws against the threshold it must stay under. pass == (worst_violation
// <= threshold) always holds; keeping both numbers makes margins visible.
struct ProbeReport {
  std::string name;
  long samples = 0;
  double worst_violation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

inline ProbeReport make_report(std::string name, long samples, double worst,
                               double threshold) {
  return ProbeReport{std::move(name), samples, worst, threshold,
                     worst <= threshold};
}

enum class ObjectiveKind { f, g };

// Central finite differences (F(x + h e_i) - F(x - h e_i)) / (2h), the
// independent oracle for the closed-form gradients. Needs x_i > h so the
// stencil stays in the domain.
ArrayXd finite_diff_grad(ObjectiveKind objective, const ChannelInstance& instance,
                         const Eigen::Ref<const ArrayXd>& x, Order order,
                         double h = defaults::kFiniteDiffStep);

// Curvature probe along the geodesic from x to y: second central differences
// of phi(t) = f_alpha(gamma(t)) on a uniform `samples`-point grid must stay
// within |1 - alpha| * d^2(x, y) (plus slack), those of the relaxed objective
// within (|1 - alpha| + 1) * d^2(x, y) (which needs x, y inside the unit
// box), and the two per-row conditional moments of log(y ./ x) under the
// tilted row distributions must lie in [0, d^2(x, y)] (plus slack), both
// per row and weight-averaged. worst_violation is the largest excess over
// any of these bounds, so the threshold is 0.
ProbeReport smoothness_probe(const ChannelInstance& instance, const PositivePoint& x,
                             const PositivePoint& y, Order order,
                             int samples = defaults::kSmoothnessSamples,
                             double rel_slack = defaults::kSmoothnessRelSlack,
                             double abs_slack = defaults::kSmoothnessAbsSlack);

// Brute-force minimizer of f_alpha over the simplex for tiny alphabets
// (N = 2 or 3): a uniform barycentric grid at `resolution` points per
// dimension, then kGridZoomRounds rounds of kGridZoomFactor-times zoom
// around the incumbent. Convexity of f_alpha along chords makes the result
// accurate to O(1/resolution^2) after zooming.
struct GridOracleResult {
  ArrayXd minimizer;  // closed-simplex point
  double value;
};
GridOracleResult grid_oracle(const ChannelInstance& instance, Order order,
                             int resolution = defaults::kGridResolution);

// Checks that the Poincare pairing of the Riemannian gradient representer
// x.^2 .* egrad against random tangent directions equals the Euclidean
// pairing of egrad, to 1e-12 relative, over `trials` random directions.
ProbeReport riesz_probe(const PositivePoint& x, const Eigen::Ref<const ArrayXd>& egrad,
                        int trials, std::uint64_t seed,
                        double tol = defaults::kRieszTol);

// Gradient oracle probe: closed-form gradients of f and g against central
// finite differences on random (x, order) pairs of the given instance. The
// gradient callables are injectable so the test harness can verify the probe
// catches a corrupted gradient.
using GradientFn = std::function<ArrayXd(const ChannelInstance&,
                                         const Eigen::Ref<const ArrayXd>&, Order)>;
ProbeReport gradient_probe(const ChannelInstance& instance,
                           const std::vector<Order>& orders, std::uint64_t seed,
                           int samples, double tol = defaults::kGradCheckTol,
                           GradientFn grad_f = nullptr, GradientFn grad_g = nullptr);

// Sample counts and thresholds for the full suite. Every number a probe
// compares against is here, not in code.
struct SuiteConfig {
  int geometry_samples = 200;
  int riesz_trials = 1000;
  int objective_samples = 200;
  int gradient_samples = 128;
  int smoothness_pairs = 3;
  int smoothness_samples = defaults::kSmoothnessSamples;
  // Coarser grid at order one: the curvature bound is exactly zero there, so
  // the absolute slack must dominate the O(eps / step^2) noise floor of the
  // second differences.
  int smoothness_samples_order_one = 201;
  int solver_iters = 2000;
  int solver_runs = 2;
  int certificate_iters = 1000;
  int certificate_ref_iters = 10000;
  int vanishing_grad_iters = 10000;
  // Boundary-decay probe: a coordinate the channel never emits must decay
  // like 1/(step * t); the probe checks x_vacuous * step * t stays below
  // boundary_rate_const at t = boundary_decay_iters on a built-in fixture.
  int boundary_decay_iters = 20000;
  double boundary_rate_const = 1.25;

  double exp_log_tol = defaults::kExpLogInversionTol;
  double dist_symmetry_tol = defaults::kDistanceSymmetryTol;
  double triangle_slack = defaults::kTriangleSlack;
  double norm_dist_tol = defaults::kNormDistanceTol;
  double geodesic_tol = defaults::kGeodesicParamTol;
  double riesz_tol = defaults::kRieszTol;
  double renyi_negativity_slack = defaults::kSumTol;
  double kl_limit_abs_slack = 1e-9;
  double scaling_tol = defaults::kSumTol;
  double gradient_tol = defaults::kGradCheckTol;
  double simplex_image_tol = defaults::kSimplexImageTol;
  double convexity_slack = defaults::kConvexitySlack;
  double box_slack = defaults::kBoxSlack;
  double descent_slack = defaults::kDescentSlack;
  double sufficient_decrease_slack = defaults::kSufficientDecreaseSlack;
  double path_equivalence_tol = defaults::kPathEquivalenceTol;
  double fp_agreement_tol = 1e-8;
  double vanishing_grad_tol = 1e-6;
  double certificate_slack = 1e-12;
};

// Runs every invariant check at the configured sample counts on the given
// instance and orders. Deterministic given (instance, orders, seed, config).
// An empty order list yields an empty report.
std::vector<ProbeReport> run_invariant_suite(const ChannelInstance& instance,
                                             const std::vector<Order>& orders,
                                             std::uint64_t seed,
                                             const SuiteConfig& config = {});

}  // namespace augustin
