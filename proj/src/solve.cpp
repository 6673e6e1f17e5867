#include "augustin/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace augustin {

namespace {

using Clock = std::chrono::steady_clock;

long long ns_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
      .count();
}

void check_config(const SolverConfig& config) {
  require(config.max_iters >= 0, "SolverConfig: max_iters must be nonnegative");
  require(config.grad_tol > 0.0, "SolverConfig: grad_tol must be positive");
  require(config.trace_every >= 1, "SolverConfig: trace_every must be positive");
  require(config.floor > 0.0, "SolverConfig: floor must be positive");
  require(config.step() > 0.0 && std::isfinite(config.step()),
          "SolverConfig: step must be positive and finite");
}

ArrayXd start_point(const ChannelInstance& instance,
                    const std::optional<PositivePoint>& x1, const char* who) {
  const Index n = instance.alphabet_size();
  if (!x1) return ArrayXd::Constant(n, 1.0 / static_cast<double>(n));
  require(x1->size() == n, "solve: start point dimension mismatch");
  require((x1->coords() <= 1.0 + defaults::kBoxSlack).all(),
          who);  // the smoothness constant is only valid inside the unit box
  return x1->coords();
}

// x .* exp(-step * xg) with the underflow floor. Returns whether any
// coordinate was floored.
bool multiplicative_update(const ArrayXd& x, const ArrayXd& xg, double step,
                           double floor, ArrayXd& out) {
  out = x * (-step * xg).exp();
  if (!out.isFinite().all())
    throw std::overflow_error("rgd_step: iterate overflowed");
  if ((out >= floor).all()) return false;
  out = out.max(floor);
  return true;
}

// ||x* ./ xt - 1||_2^2; +inf if a floored iterate coordinate faces a
// materially positive x* coordinate.
double ratio_gap_squared(const ArrayXd& xt, const Eigen::Ref<const ArrayXd>& x_star,
                         double floor) {
  KahanSum<double> acc;
  for (Index i = 0; i < xt.size(); ++i) {
    if (xt(i) <= floor && x_star(i) > defaults::kCertificateBoundaryEscape)
      return kInf;
    const double r = x_star(i) / xt(i) - 1.0;
    acc.add(r * r);
  }
  return acc.value();
}

void fill_bound_terms(std::vector<IterationRecord>& trace,
                      const std::vector<ArrayXd>& iterates, const ArrayXd& x_star,
                      double floor) {
  for (std::size_t k = 0; k < trace.size(); ++k)
    trace[k].bound_term = ratio_gap_squared(iterates[k], x_star, floor);
}

struct TraceBuilder {
  explicit TraceBuilder(int every) : every_(every) {}

  bool due(long t) const { return t == 1 || (t - 1) % every_ == 0; }

  void record(long t, double g, double f_bar, double rgrad, const ArrayXd& x,
              long long wall) {
    IterationRecord rec;
    rec.t = t;
    rec.g_value = g;
    rec.f_bar_value = f_bar;
    rec.rgrad_norm = rgrad;
    rec.min_coord = x.minCoeff();
    rec.bound_term = 0.0;
    rec.wall_ns = wall;
    trace.push_back(rec);
    iterates.push_back(x);
  }

  bool recorded(long t) const { return !trace.empty() && trace.back().t == t; }

  std::vector<IterationRecord> trace;
  std::vector<ArrayXd> iterates;

 private:
  int every_;
};

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::max_iters:
      return "max-iters";
    case SolveStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

PositivePoint rgd_step(const ChannelInstance& instance, const PositivePoint& x,
                       Order order, std::optional<double> step, double floor,
                       bool* hit_floor) {
  require(x.size() == instance.alphabet_size(), "rgd_step: dimension mismatch");
  require((x.coords() <= 1.0 + defaults::kBoxSlack).all(),
          "rgd_step: iterate must lie in the unit box");
  require(floor > 0.0, "rgd_step: floor must be positive");
  const double eta = step.value_or(order.default_step());
  require(eta > 0.0 && std::isfinite(eta), "rgd_step: step must be positive and finite");

  ObjectiveEvaluator eval(instance, order);
  ArrayXd grad_f(x.size());
  eval.value_grad_mean(x.coords(), &grad_f, nullptr);
  ArrayXd xg = x.coords() * (1.0 + grad_f);
  ArrayXd next;
  const bool hit = multiplicative_update(x.coords(), xg, eta, floor, next);
  if (hit_floor != nullptr) *hit_floor = hit;
  return PositivePoint(std::move(next));
}

SolveResult rgd_solve(const ChannelInstance& instance, const SolverConfig& config,
                      const std::optional<PositivePoint>& x1) {
  check_config(config);
  ArrayXd x = start_point(instance, x1, "rgd_solve: start must lie in the unit box");
  ObjectiveEvaluator eval(instance, config.order);
  const double step = config.step();
  const auto t0 = Clock::now();

  TraceBuilder tb(config.trace_every);
  const Index n = instance.alphabet_size();
  ArrayXd grad_f(n), xg(n), next(n);
  bool hit_floor = false;
  double prev_g = kInf;
  SolveStatus status = SolveStatus::max_iters;
  long t = 1;

  for (;; ++t) {
    const double f = eval.value_grad_mean(x, &grad_f, nullptr);
    xg = x * (1.0 + grad_f);
    const double sum_x = kahan_total(x);
    const double g = sum_x + f;
    const double rgrad = std::sqrt(kahan_total(xg * xg));
    if (tb.due(t))
      tb.record(t, g, f + std::log(sum_x), rgrad, x, ns_since(t0));

    if (g > prev_g + defaults::kObjectiveIncreaseTol) {
      status = SolveStatus::diverged;
      break;
    }
    prev_g = g;
    if (rgrad <= config.grad_tol) {
      status = SolveStatus::converged;
      break;
    }
    if (t > config.max_iters) {
      status = SolveStatus::max_iters;
      break;
    }
    hit_floor |= multiplicative_update(x, xg, step, config.floor, next);
    x.swap(next);
  }

  if (!tb.recorded(t)) {
    const double f = eval.value_grad_mean(x, &grad_f, nullptr);
    xg = x * (1.0 + grad_f);
    const double sum_x = kahan_total(x);
    tb.record(t, sum_x + f, f + std::log(sum_x), std::sqrt(kahan_total(xg * xg)), x,
              ns_since(t0));
  }

  const long steps = t - 1;
  SolveResult result{PositivePoint(x), normalize(x), 0.0, status, steps,
                     std::move(tb.trace), std::move(tb.iterates), {}, hit_floor};
  result.f_value = eval.value(result.normalized_x);
  fill_bound_terms(result.trace, result.iterates, result.normalized_x, config.floor);
  if (status == SolveStatus::converged) {
    std::vector<long> ts(result.trace.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = result.trace[k].t;
    result.certificate = certificate(result.iterates, ts, result.normalized_x,
                                     config.order, std::max(steps, 1L), config.floor);
  }
  return result;
}

ArrayXd fixed_point_step(const ChannelInstance& instance, const PositivePoint& x,
                         Order order) {
  require(x.size() == instance.alphabet_size(), "fixed_point_step: dimension mismatch");
  ObjectiveEvaluator eval(instance, order);
  ArrayXd mean(x.size());
  eval.value_grad_mean(x.coords(), nullptr, &mean);
  return mean;
}

SolveResult fixed_point_solve(const ChannelInstance& instance, const SolverConfig& config,
                              const std::optional<PositivePoint>& x1) {
  check_config(config);
  ArrayXd x =
      start_point(instance, x1, "fixed_point_solve: start must lie in the unit box");
  ObjectiveEvaluator eval(instance, config.order);
  const auto t0 = Clock::now();

  TraceBuilder tb(config.trace_every);
  const Index n = instance.alphabet_size();
  ArrayXd grad_f(n), mean(n), xg(n);
  std::deque<double> window;
  SolveStatus status = SolveStatus::max_iters;
  long t = 1;

  for (;; ++t) {
    const double f = eval.value_grad_mean(x, &grad_f, &mean);
    xg = x * (1.0 + grad_f);
    const double sum_x = kahan_total(x);
    const double f_bar = f + std::log(sum_x);
    if (tb.due(t))
      tb.record(t, sum_x + f, f_bar, std::sqrt(kahan_total(xg * xg)), x, ns_since(t0));

    // Trailing-window oscillation detector: diverged when f_bar makes no net
    // progress over the window while swinging by more than the amplitude.
    window.push_back(f_bar);
    if (window.size() > static_cast<std::size_t>(defaults::kOscillationWindow))
      window.pop_front();
    if (window.size() == static_cast<std::size_t>(defaults::kOscillationWindow)) {
      const double lo = *std::min_element(window.begin(), window.end());
      const double hi = *std::max_element(window.begin(), window.end());
      if (window.back() >= window.front() &&
          hi - lo > defaults::kOscillationAmplitude) {
        status = SolveStatus::diverged;
        break;
      }
    }

    KahanSum<double> l1;
    for (Index i = 0; i < n; ++i) l1.add(std::abs(mean(i) - x(i)));
    if (l1.value() <= config.grad_tol) {
      status = SolveStatus::converged;
      break;
    }
    if (t > config.max_iters) {
      status = SolveStatus::max_iters;
      break;
    }
    x = mean.max(config.floor);  // keep strictly positive for the next sweep
  }

  if (!tb.recorded(t)) {
    const double f = eval.value_grad_mean(x, &grad_f, nullptr);
    xg = x * (1.0 + grad_f);
    const double sum_x = kahan_total(x);
    tb.record(t, sum_x + f, f + std::log(sum_x), std::sqrt(kahan_total(xg * xg)), x,
              ns_since(t0));
  }

  const long steps = t - 1;
  SolveResult result{PositivePoint(x),  normalize(x),          0.0,
                     status,            steps,                 std::move(tb.trace),
                     std::move(tb.iterates), {}, false};
  result.f_value = eval.value(result.normalized_x);
  fill_bound_terms(result.trace, result.iterates, result.normalized_x, config.floor);
  return result;
}

double certificate(std::span<const ArrayXd> iterates, std::span<const long> ts,
                   const Eigen::Ref<const ArrayXd>& x_star, Order order, long T,
                   double floor) {
  require(iterates.size() == ts.size(), "certificate: one index per iterate required");
  require(!iterates.empty(), "certificate: need at least one stored iterate");
  require(T >= 1, "certificate: T must be positive");
  require(x_star.isFinite().all() && (x_star >= 0.0).all(),
          "certificate: x* must be finite and nonnegative");
  if ((x_star == 0.0).any()) return kInf;  // log-distance to x* is unbounded

  double worst = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < iterates.size(); ++k) {
    if (ts[k] > T) continue;
    require(iterates[k].size() == x_star.size(), "certificate: dimension mismatch");
    any = true;
    worst = std::max(worst, ratio_gap_squared(iterates[k], x_star, floor));
  }
  require(any, "certificate: no stored iterate with index <= T");
  return (2.0 * order.smoothness() / static_cast<double>(T)) * worst;
}

double certificate(std::span<const ArrayXd> iterates,
                   const Eigen::Ref<const ArrayXd>& x_star, Order order, long T,
                   double floor) {
  require(T <= static_cast<long>(iterates.size()),
          "certificate: T exceeds the number of stored iterates");
  std::vector<long> ts(iterates.size());
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = static_cast<long>(k) + 1;
  return certificate(iterates, ts, x_star, order, T, floor);
}

ArrayXd normalize(const Eigen::Ref<const ArrayXd>& x) {
  require(x.size() >= 1, "normalize: empty vector");
  require(x.isFinite().all() && (x > 0.0).all(),
          "normalize: coordinates must be strictly positive");
  return x / kahan_total(x);
}

ArrayXd normalize(const PositivePoint& x) { return normalize(x.coords()); }

}  // namespace augustin
