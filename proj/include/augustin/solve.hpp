#pragma once

#include "augustin/objective.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace augustin {

enum class SolveStatus { converged, max_iters, diverged };

std::string to_string(SolveStatus status);

struct SolverConfig {
  Order order;
  int max_iters = defaults::kMaxIters;   // step budget; 0 evaluates the start only
  double grad_tol = defaults::kGradTol;  // threshold on ||x .* grad g||_2
  std::optional<double> step_override;   // default step is 1/(|1 - alpha| + 1)
  int trace_every = defaults::kTraceEvery;
  double floor = defaults::kCoordinateFloor;

  explicit SolverConfig(Order o) : order(o) {}

  double step() const { return step_override.value_or(order.default_step()); }
};

// One trace row. t counts iterates from 1 (the start point); every
// trace_every-th iterate is recorded, plus the first and the last.
struct IterationRecord {
  long t = 0;
  double g_value = 0.0;
  double f_bar_value = 0.0;  // f_alpha at the normalized iterate
  double rgrad_norm = 0.0;   // ||x .* grad g_alpha(x)||_2
  double min_coord = 0.0;
  double bound_term = 0.0;   // ||x* ./ x_t - 1||_2^2, filled post hoc
  long long wall_ns = 0;
};

struct SolveResult {
  PositivePoint final_x;
  ArrayXd normalized_x;  // x / ||x||_1, sums to one
  double f_value = 0.0;  // f_alpha at normalized_x
  SolveStatus status = SolveStatus::max_iters;
  long iterations = 0;   // steps taken; the final iterate is x_{iterations+1}
  std::vector<IterationRecord> trace;
  std::vector<ArrayXd> iterates;  // stored iterates, aligned with trace rows
  std::optional<double> certificate;
  bool hit_floor = false;
};

// One multiplicative descent update x .* exp(-step * x .* grad g_alpha(x)).
// Coordinates that fall below `floor` are raised to it (and *hit_floor set).
// Matches the geometry composition exp_x(-step * riemannian_grad) to
// relative 1e-14 per coordinate.
PositivePoint rgd_step(const ChannelInstance& instance, const PositivePoint& x,
                       Order order, std::optional<double> step = {},
                       double floor = defaults::kCoordinateFloor,
                       bool* hit_floor = nullptr);

// Gradient descent in the Poincare geometry on the relaxed objective.
// Starts from 1/N * ones unless x1 is given (which must satisfy 0 < x1 <= 1).
// Stops when the Riemannian gradient norm reaches grad_tol; a rise of g by
// more than 1e-9 between consecutive iterates marks the run diverged (a bug
// or an invalid step_override). Converged runs carry a certificate computed
// against the run's own final normalized iterate; callers wanting a stronger
// reference can rerun `certificate` with an x* from a longer run.
SolveResult rgd_solve(const ChannelInstance& instance, const SolverConfig& config,
                      const std::optional<PositivePoint>& x1 = {});

// The classical one-step update x -> E_p[p^alpha .* x^(1-alpha) / <p^alpha,
// x^(1-alpha)>], a closed-simplex point for every strictly positive x (it may
// have exact zeros at vacuous letters).
ArrayXd fixed_point_step(const ChannelInstance& instance, const PositivePoint& x,
                         Order order);

// Fixed-point iteration. Stops when ||x_{t+1} - x_t||_1 <= grad_tol. Only
// guaranteed to converge below order one; above it the run is declared
// diverged when over a trailing 100-iteration window f_alpha of the
// normalized iterate fails to decrease while oscillating by more than 1e-6.
SolveResult fixed_point_solve(const ChannelInstance& instance, const SolverConfig& config,
                              const std::optional<PositivePoint>& x1 = {});

// Ex-post optimality bound (2(|1 - alpha| + 1)/T) * max_{t<=T} ||x* ./ x_t
// - 1||_2^2 over the stored iterates; an upper bound on f_alpha(xbar_{T+1})
// - f_alpha(x*). iterates[k] is iterate x_{k+1}; requires 1 <= T <=
// iterates.size(). Returns +infinity when x* has a zero coordinate, or when
// some iterate coordinate sits at the floor while x*'s stays materially
// positive: the bound is not informative across that boundary.
double certificate(std::span<const ArrayXd> iterates,
                   const Eigen::Ref<const ArrayXd>& x_star, Order order, long T,
                   double floor = defaults::kCoordinateFloor);

// Same bound when iterates were stored with a stride; ts gives each stored
// iterate's index t, and the max runs over stored entries with t <= T.
double certificate(std::span<const ArrayXd> iterates, std::span<const long> ts,
                   const Eigen::Ref<const ArrayXd>& x_star, Order order, long T,
                   double floor = defaults::kCoordinateFloor);

// x / ||x||_1.
ArrayXd normalize(const PositivePoint& x);
ArrayXd normalize(const Eigen::Ref<const ArrayXd>& x);

}  // namespace augustin
