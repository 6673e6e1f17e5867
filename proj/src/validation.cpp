#include "augustin/validation.hpp"

#include "augustin/geometry.hpp"
#include "augustin/rng.hpp"

#include <algorithm>
#include <cmath>

namespace augustin {

namespace {

// Sampling windows for probe draws. These shape the test-point distribution;
// thresholds and sample counts come from the caller or SuiteConfig.
constexpr double kWideBoxLo = 1e-6, kWideBoxHi = 1e6;  // exp/log stress range
constexpr double kMidBoxLo = 1e-2, kMidBoxHi = 1e2;    // distance-axiom range
constexpr double kUnitBoxLo = 1e-2, kUnitBoxHi = 1.0;  // objective domain range
constexpr double kTinyDenom = 1e-300;

PositivePoint random_point(std::mt19937_64& rng, Index n, double lo, double hi) {
  return PositivePoint(sample_box(rng, n, lo, hi));
}

double rel_gap(double a, double b, double scale) {
  return std::abs(a - b) / std::max(scale, kTinyDenom);
}

}  // namespace

ArrayXd finite_diff_grad(ObjectiveKind objective, const ChannelInstance& instance,
                         const Eigen::Ref<const ArrayXd>& x, Order order, double h) {
  require(h > 0.0, "finite_diff_grad: step must be positive");
  require(x.size() == instance.alphabet_size(), "finite_diff_grad: dimension mismatch");
  require(x.isFinite().all() && (x > h).all(),
          "finite_diff_grad: coordinates must exceed the stencil half-width");
  ObjectiveEvaluator eval(instance, order);
  ArrayXd point = x;
  ArrayXd grad(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double xi = point(i);
    point(i) = xi + h;
    double fp = eval.value(point);
    if (objective == ObjectiveKind::g) fp += kahan_total(point);
    point(i) = xi - h;
    double fm = eval.value(point);
    if (objective == ObjectiveKind::g) fm += kahan_total(point);
    point(i) = xi;
    grad(i) = (fp - fm) / (2.0 * h);
  }
  return grad;
}

ProbeReport smoothness_probe(const ChannelInstance& instance, const PositivePoint& x,
                             const PositivePoint& y, Order order, int samples,
                             double rel_slack, double abs_slack) {
  const Index n = instance.alphabet_size();
  require(x.size() == n && y.size() == n, "smoothness_probe: dimension mismatch");
  require(samples >= 3, "smoothness_probe: need at least three grid points");
  require((x.coords() <= 1.0).all() && (y.coords() <= 1.0).all(),
          "smoothness_probe: endpoints must lie in the unit box");

  const double d = poincare_dist(x, y);
  const double d2 = d * d;
  const double bound_f = std::abs(1.0 - order.alpha()) * d2;
  const double bound_g = order.smoothness() * d2;
  // ell = log(y ./ x) is both the geodesic's log-velocity and the direction
  // whose tilted moments the curvature bounds control. Using x .* exp(t*ell)
  // for the geodesic keeps the x == y case exact (ell is exactly zero there).
  const ArrayXd ell = (y.coords() / x.coords()).log();

  ObjectiveEvaluator eval(instance, order);
  ArrayXd phi(samples), psi(samples);
  ArrayXd first(instance.input_count()), second(instance.input_count());
  const double dt = 1.0 / (samples - 1);
  double worst = -kInf;

  for (int j = 0; j < samples; ++j) {
    const double t = (j == samples - 1) ? 1.0 : j * dt;
    const ArrayXd gamma = x.coords() * (t * ell).exp();
    const double f = eval.row_tilted_moments(gamma, ell, first, second);
    phi(j) = f;
    psi(j) = kahan_total(gamma) + f;
    for (Index r = 0; r < first.size(); ++r) {
      const double q1 = first(r) * first(r);
      const double q2 = second(r);
      const double hi = d2 + defaults::kQuantityRangeSlack;
      worst = std::max({worst, q1 - hi, q2 - hi,
                        -q1 - defaults::kQuantityNegativeSlack,
                        -q2 - defaults::kQuantityNegativeSlack});
    }
  }

  const double inv_dt2 = 1.0 / (dt * dt);
  const double thresh_f = bound_f * (1.0 + rel_slack) + abs_slack;
  const double thresh_g = bound_g * (1.0 + rel_slack) + abs_slack;
  for (int j = 1; j + 1 < samples; ++j) {
    const double ddf = (phi(j - 1) - 2.0 * phi(j) + phi(j + 1)) * inv_dt2;
    const double ddg = (psi(j - 1) - 2.0 * psi(j) + psi(j + 1)) * inv_dt2;
    worst = std::max({worst, std::abs(ddf) - thresh_f, std::abs(ddg) - thresh_g});
  }
  return make_report("objective/smoothness", samples, worst, 0.0);
}

namespace {

// One zoomable scan window inside [0, 1].
struct Window {
  double lo = 0.0;
  double span = 1.0;
  void zoom_to(double center, double factor) {
    span /= factor;
    lo = std::clamp(center - 0.5 * span, 0.0, 1.0 - span);
  }
  double at(int j, int resolution) const {
    return std::min(lo + span * (static_cast<double>(j) / resolution), 1.0);
  }
};

}  // namespace

GridOracleResult grid_oracle(const ChannelInstance& instance, Order order,
                             int resolution) {
  const Index n = instance.alphabet_size();
  require(n == 2 || n == 3, "grid_oracle: only alphabet sizes 2 and 3 are supported");
  require(resolution >= 2, "grid_oracle: resolution must be at least 2");
  ObjectiveEvaluator eval(instance, order);

  GridOracleResult best;
  best.value = kInf;
  ArrayXd candidate(n);

  if (n == 2) {
    Window w;
    double b0 = 0.5;
    for (int round = 0; round <= defaults::kGridZoomRounds; ++round) {
      if (round > 0) w.zoom_to(b0, defaults::kGridZoomFactor);
      for (int j = 0; j <= resolution; ++j) {
        const double s = w.at(j, resolution);
        candidate(0) = s;
        candidate(1) = std::max(0.0, 1.0 - s);
        const double v = eval.value(candidate);
        if (v < best.value) {
          best.value = v;
          best.minimizer = candidate;
          b0 = s;
        }
      }
    }
    return best;
  }

  Window w0, w1;
  double b0 = 1.0 / 3.0, b1 = 1.0 / 3.0;
  for (int round = 0; round <= defaults::kGridZoomRounds; ++round) {
    if (round > 0) {
      w0.zoom_to(b0, defaults::kGridZoomFactor);
      w1.zoom_to(b1, defaults::kGridZoomFactor);
    }
    for (int j = 0; j <= resolution; ++j) {
      const double s0 = w0.at(j, resolution);
      for (int k = 0; k <= resolution; ++k) {
        const double s1 = w1.at(k, resolution);
        double s2 = 1.0 - s0 - s1;
        if (s2 < 0.0) {
          if (s2 < -1e-15) break;  // s1 only grows from here
          s2 = 0.0;
        }
        candidate(0) = s0;
        candidate(1) = s1;
        candidate(2) = s2;
        const double v = eval.value(candidate);
        if (v < best.value) {
          best.value = v;
          best.minimizer = candidate;
          b0 = s0;
          b1 = s1;
        }
      }
    }
  }
  return best;
}

ProbeReport riesz_probe(const PositivePoint& x, const Eigen::Ref<const ArrayXd>& egrad,
                        int trials, std::uint64_t seed, double tol) {
  require(trials >= 1, "riesz_probe: need at least one trial");
  require(egrad.size() == x.size(), "riesz_probe: dimension mismatch");
  require(egrad.isFinite().all(), "riesz_probe: gradient must be finite");
  std::mt19937_64 rng(seed);
  const TangentVector rep = riemannian_grad(x, ArrayXd(egrad));
  ArrayXd v(x.size());
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    for (Index i = 0; i < v.size(); ++i) v(i) = 2.0 * unit_double(rng) - 1.0;
    const double pairing = poincare_inner(rep, TangentVector(x, v));
    KahanSum<double> dot, mag;
    for (Index i = 0; i < v.size(); ++i) {
      const double term = egrad(i) * v(i);
      dot.add(term);
      mag.add(std::abs(term));
    }
    worst = std::max(worst, rel_gap(pairing, dot.value(), mag.value()));
  }
  return make_report("geometry/riesz", trials, worst, tol);
}

ProbeReport gradient_probe(const ChannelInstance& instance,
                           const std::vector<Order>& orders, std::uint64_t seed,
                           int samples, double tol, GradientFn grad_f,
                           GradientFn grad_g) {
  require(samples >= 0, "gradient_probe: sample count must be nonnegative");
  if (!grad_f) grad_f = [](const ChannelInstance& c, const Eigen::Ref<const ArrayXd>& x,
                           Order o) { return grad_f_alpha(c, x, o); };
  if (!grad_g) grad_g = [](const ChannelInstance& c, const Eigen::Ref<const ArrayXd>& x,
                           Order o) { return grad_g_alpha(c, x, o); };
  if (orders.empty() || samples == 0)
    return make_report("objective/gradient", 0, 0.0, tol);

  std::mt19937_64 rng(seed);
  const Index n = instance.alphabet_size();
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Order order = orders[static_cast<size_t>(k) % orders.size()];
    const ArrayXd x = sample_box(rng, n, kUnitBoxLo, kUnitBoxHi);
    const ArrayXd fd_f = finite_diff_grad(ObjectiveKind::f, instance, x, order);
    const ArrayXd fd_g = finite_diff_grad(ObjectiveKind::g, instance, x, order);
    const ArrayXd an_f = grad_f(instance, x, order);
    const ArrayXd an_g = grad_g(instance, x, order);
    worst = std::max(worst, (an_f - fd_f).abs().maxCoeff() /
                                std::max(1.0, fd_f.abs().maxCoeff()));
    worst = std::max(worst, (an_g - fd_g).abs().maxCoeff() /
                                std::max(1.0, fd_g.abs().maxCoeff()));
  }
  return make_report("objective/gradient", samples, worst, tol);
}

std::vector<ProbeReport> run_invariant_suite(const ChannelInstance& instance,
                                             const std::vector<Order>& orders,
                                             std::uint64_t seed,
                                             const SuiteConfig& config) {
  std::vector<ProbeReport> reports;
  if (orders.empty()) return reports;

  std::mt19937_64 rng(seed);
  const Index n = instance.alphabet_size();
  const size_t order_count = orders.size();

  // ---- geometry ----
  {
    double worst = 0.0;
    for (int s = 0; s < config.geometry_samples; ++s) {
      const PositivePoint x = random_point(rng, n, kWideBoxLo, kWideBoxHi);
      const PositivePoint y = random_point(rng, n, kWideBoxLo, kWideBoxHi);
      const PositivePoint back = poincare_exp(poincare_log(x, y));
      for (Index i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(back[i] - y[i]) / y[i]);
    }
    reports.push_back(make_report("geometry/exp-log-inversion",
                                  config.geometry_samples, worst, config.exp_log_tol));
  }
  {
    double worst_sym = 0.0, worst_id = 0.0, worst_tri = -kInf;
    for (int s = 0; s < config.geometry_samples; ++s) {
      const PositivePoint x = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const PositivePoint y = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const PositivePoint z = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const double dxy = poincare_dist(x, y);
      worst_sym = std::max(worst_sym, rel_gap(dxy, poincare_dist(y, x), dxy));
      worst_id = std::max(worst_id, poincare_dist(x, x));
      worst_tri = std::max(worst_tri,
                           poincare_dist(x, z) - dxy - poincare_dist(y, z));
    }
    reports.push_back(make_report("geometry/distance-symmetry",
                                  config.geometry_samples, worst_sym,
                                  config.dist_symmetry_tol));
    reports.push_back(make_report("geometry/distance-identity",
                                  config.geometry_samples, worst_id, 0.0));
    reports.push_back(make_report("geometry/triangle-inequality",
                                  config.geometry_samples, worst_tri,
                                  config.triangle_slack));
  }
  {
    double worst = 0.0;
    for (int s = 0; s < config.geometry_samples; ++s) {
      const PositivePoint x = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const PositivePoint y = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const double d = poincare_dist(x, y);
      worst = std::max(worst, rel_gap(poincare_norm(poincare_log(x, y)), d, d));
    }
    reports.push_back(make_report("geometry/norm-distance", config.geometry_samples,
                                  worst, config.norm_dist_tol));
  }
  {
    double worst = 0.0;
    for (int s = 0; s < config.geometry_samples; ++s) {
      const PositivePoint x = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const PositivePoint y = random_point(rng, n, kMidBoxLo, kMidBoxHi);
      const double d = poincare_dist(x, y);
      const double a = unit_double(rng), b = unit_double(rng);
      const double seg = poincare_dist(geodesic_point(x, y, a), geodesic_point(x, y, b));
      worst = std::max(worst, rel_gap(seg, std::abs(b - a) * d, d));
    }
    reports.push_back(make_report("geometry/geodesic-param", config.geometry_samples,
                                  worst, config.geodesic_tol));
  }
  {
    const PositivePoint x = random_point(rng, n, 0.1, 1.0);
    ArrayXd egrad(n);
    for (Index i = 0; i < n; ++i) egrad(i) = 4.0 * unit_double(rng) - 2.0;
    ProbeReport r = riesz_probe(x, egrad, config.riesz_trials, rng(), config.riesz_tol);
    reports.push_back(std::move(r));
  }

  // ---- objective ----
  std::vector<ObjectiveEvaluator> evals;
  evals.reserve(order_count);
  for (const Order order : orders) evals.emplace_back(instance, order);

  {
    double worst_neg = -kInf, worst_id = 0.0, worst_sep = -kInf;
    for (int s = 0; s < config.objective_samples; ++s) {
      const Order order = orders[static_cast<size_t>(s) % order_count];
      const ArrayXd p = sample_simplex(rng, n);
      const ArrayXd q = sample_simplex(rng, n);
      const double d = renyi_divergence(p, q, order);
      worst_neg = std::max(worst_neg, -d);
      worst_id = std::max(worst_id, std::abs(renyi_divergence(p, p, order)));
      // Pinsker-type separation: D_alpha >= min(alpha, 1)/2 * ||p - q||_1^2.
      const double l1 = (p - q).abs().sum();
      worst_sep = std::max(worst_sep,
                           std::min(order.alpha(), 1.0) * 0.5 * l1 * l1 - d);
    }
    reports.push_back(make_report("objective/renyi-nonnegativity",
                                  config.objective_samples, worst_neg,
                                  config.renyi_negativity_slack));
    reports.push_back(make_report("objective/renyi-identity", config.objective_samples,
                                  worst_id, config.renyi_negativity_slack));
    reports.push_back(make_report("objective/renyi-separation",
                                  config.objective_samples, worst_sep, 0.0));
  }
  {
    // Order-one limit, rate-calibrated: the deviation |D_alpha - KL| at
    // alpha = 1 +/- eps must shrink linearly with eps, with the constant
    // measured at a coarser eps so the check needs no model of the channel.
    double worst = -kInf;
    const double eps0 = defaults::kKlLimitCalibEps;
    const double eps = defaults::kKlLimitEps;
    for (int s = 0; s < config.objective_samples; ++s) {
      const ArrayXd p = sample_simplex(rng, n);
      const ArrayXd q = sample_simplex(rng, n);
      const double kl = renyi_divergence(p, q, Order(1.0));
      const double c =
          std::max(std::abs(renyi_divergence(p, q, Order(1.0 + eps0)) - kl),
                   std::abs(renyi_divergence(p, q, Order(1.0 - eps0)) - kl)) /
          eps0;
      const double dev =
          std::max(std::abs(renyi_divergence(p, q, Order(1.0 + eps)) - kl),
                   std::abs(renyi_divergence(p, q, Order(1.0 - eps)) - kl));
      worst = std::max(worst, dev - (1.5 * c * eps + config.kl_limit_abs_slack));
    }
    reports.push_back(make_report("objective/kl-limit", config.objective_samples,
                                  worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int s = 0; s < config.objective_samples; ++s) {
      const size_t idx = static_cast<size_t>(s) % order_count;
      const ArrayXd x = sample_box(rng, n, 1e-3, 1.0);
      const double lambda = log_uniform(rng, 1e-3, 1e3);
      const ArrayXd scaled = lambda * x;
      worst = std::max(worst, std::abs(evals[idx].value(scaled) -
                                       evals[idx].value(x) + std::log(lambda)));
    }
    reports.push_back(make_report("objective/scaling-identity",
                                  config.objective_samples, worst,
                                  config.scaling_tol));
  }
  reports.push_back(gradient_probe(instance, orders, rng(), config.gradient_samples,
                                   config.gradient_tol));
  {
    double worst = 0.0;
    ArrayXd grad;
    for (int s = 0; s < config.objective_samples; ++s) {
      const size_t idx = static_cast<size_t>(s) % order_count;
      const ArrayXd x = sample_box(rng, n, kUnitBoxLo, kUnitBoxHi);
      evals[idx].value_grad_mean(x, &grad, nullptr);
      const ArrayXd mass = x * (-grad);
      worst = std::max({worst, std::abs(kahan_total(mass) - 1.0), -mass.minCoeff()});
    }
    reports.push_back(make_report("objective/simplex-image", config.objective_samples,
                                  worst, config.simplex_image_tol));
  }
  {
    static constexpr double lambdas[] = {0.25, 0.5, 0.9, 1.1, 2.0, 4.0};
    double worst = -kInf;
    for (int s = 0; s < config.objective_samples; ++s) {
      const size_t idx = static_cast<size_t>(s) % order_count;
      const ArrayXd y = sample_simplex(rng, n);
      const double gy = kahan_total(y) + evals[idx].value(y);
      for (const double lambda : lambdas) {
        const ArrayXd scaled = lambda * y;
        worst = std::max(worst, gy - (kahan_total(scaled) + evals[idx].value(scaled)));
      }
    }
    reports.push_back(make_report("objective/ray-minimality", config.objective_samples,
                                  worst, config.convexity_slack));
  }
  {
    double worst = -kInf;
    for (int s = 0; s < config.objective_samples; ++s) {
      const size_t idx = static_cast<size_t>(s) % order_count;
      const ArrayXd a = sample_box(rng, n, kUnitBoxLo, kUnitBoxHi);
      const ArrayXd b = sample_box(rng, n, kUnitBoxLo, kUnitBoxHi);
      const ArrayXd mid = 0.5 * (a + b);
      const double lhs = kahan_total(mid) + evals[idx].value(mid);
      const double rhs = 0.5 * ((kahan_total(a) + evals[idx].value(a)) +
                                (kahan_total(b) + evals[idx].value(b)));
      worst = std::max(worst, lhs - rhs);
    }
    reports.push_back(make_report("objective/chord-convexity",
                                  config.objective_samples, worst,
                                  config.convexity_slack));
  }
  {
    double worst = -kInf;
    long samples = 0;
    for (const Order order : orders) {
      const int grid = order.is_one() ? config.smoothness_samples_order_one
                                      : config.smoothness_samples;
      for (int s = 0; s < config.smoothness_pairs; ++s) {
        const PositivePoint x = random_point(rng, n, kUnitBoxLo, kUnitBoxHi);
        const PositivePoint y = random_point(rng, n, kUnitBoxLo, kUnitBoxHi);
        const ProbeReport r = smoothness_probe(instance, x, y, order, grid);
        worst = std::max(worst, r.worst_violation);
        samples += r.samples;
      }
    }
    reports.push_back(make_report("objective/smoothness", samples, worst, 0.0));
  }

  // ---- solvers ----
  {
    double worst_box = -kInf, worst_desc = -kInf, worst_suff = -kInf;
    double worst_path = 0.0;
    long pairs = 0, path_samples = 0;
    for (const Order order : orders) {
      SolverConfig cfg(order);
      cfg.max_iters = config.solver_iters;
      cfg.trace_every = 1;
      const SolveResult run = rgd_solve(instance, cfg);
      const double inv_2l = 1.0 / (2.0 * order.smoothness());
      for (const ArrayXd& it : run.iterates)
        worst_box = std::max(worst_box, it.maxCoeff() - 1.0);
      for (size_t k = 0; k + 1 < run.trace.size(); ++k) {
        const double drop = run.trace[k].g_value - run.trace[k + 1].g_value;
        const double rg = run.trace[k].rgrad_norm;
        worst_desc = std::max(worst_desc, -drop);
        worst_suff = std::max(worst_suff, rg * rg * inv_2l - drop);
        ++pairs;
      }
      // Path equivalence on a strided subset: one multiplicative update versus
      // the geometry-composed exponential of the scaled Riemannian gradient.
      const size_t stride = std::max<size_t>(1, run.iterates.size() / 32);
      for (size_t k = 0; k < run.iterates.size(); k += stride) {
        const PositivePoint pt(run.iterates[k]);
        const PositivePoint stepped = rgd_step(instance, pt, order);
        const ArrayXd egrad = grad_g_alpha(instance, run.iterates[k], order);
        const TangentVector rg = riemannian_grad(pt, egrad);
        const PositivePoint composed =
            poincare_exp(TangentVector(pt, -cfg.step() * rg.direction()));
        for (Index i = 0; i < n; ++i)
          worst_path = std::max(worst_path,
                                std::abs(stepped[i] - composed[i]) / composed[i]);
        ++path_samples;
      }
    }
    reports.push_back(make_report("solver/remain-in-box",
                                  static_cast<long>(order_count), worst_box,
                                  config.box_slack));
    reports.push_back(make_report("solver/monotone-descent", pairs, worst_desc,
                                  config.descent_slack));
    reports.push_back(make_report("solver/sufficient-decrease", pairs, worst_suff,
                                  config.sufficient_decrease_slack));
    reports.push_back(make_report("solver/path-equivalence", path_samples, worst_path,
                                  config.path_equivalence_tol));
  }
  if (!instance.has_vacuous_symbol()) {
    // Interior optimum: the gradient norm must be tiny by the configured
    // horizon. Instances with vacuous symbols converge to the boundary where
    // this decays only harmonically; the boundary-decay probe covers those.
    double worst = 0.0;
    for (const Order order : orders) {
      SolverConfig cfg(order);
      cfg.max_iters = config.vanishing_grad_iters;
      cfg.trace_every = config.vanishing_grad_iters;
      const SolveResult run = rgd_solve(instance, cfg);
      worst = std::max(worst, run.trace.back().rgrad_norm);
    }
    reports.push_back(make_report("solver/vanishing-gradient",
                                  static_cast<long>(order_count), worst,
                                  config.vanishing_grad_tol));
  }
  if (!instance.has_vacuous_symbol()) {
    // Cross-solver agreement needs both solvers at their limits. The fixed
    // point jumps to the boundary in one sweep, while the descent iterate
    // only decays harmonically toward it, so finite budgets cannot agree to
    // 1e-8 on vacuous instances.
    double worst = 0.0;
    long runs = 0;
    for (const Order order : orders) {
      if (order.kind() != Order::Kind::below_one) continue;
      SolverConfig cfg(order);
      cfg.max_iters = config.solver_iters;
      cfg.trace_every = config.solver_iters;
      const SolveResult rgd = rgd_solve(instance, cfg);
      const SolveResult fp = fixed_point_solve(instance, cfg);
      worst = std::max(worst, std::abs(rgd.f_value - fp.f_value));
      ++runs;
    }
    if (runs > 0)
      reports.push_back(make_report("solver/fp-agreement", runs, worst,
                                    config.fp_agreement_tol));
  }
  {
    double worst = -kInf;
    long prefixes = 0;
    for (const Order order : orders) {
      SolverConfig cfg(order);
      cfg.max_iters = config.certificate_iters;
      cfg.trace_every = 1;
      const SolveResult run = rgd_solve(instance, cfg);
      SolverConfig ref_cfg(order);
      ref_cfg.max_iters = config.certificate_ref_iters;
      ref_cfg.trace_every = config.certificate_ref_iters;
      const SolveResult ref = rgd_solve(instance, ref_cfg);
      const std::span<const ArrayXd> iterates(run.iterates);
      for (long t = 1; t <= run.iterations; ++t) {
        const double bound = certificate(iterates.first(static_cast<size_t>(t)),
                                         ref.normalized_x, order, t);
        const double fbar = run.trace[static_cast<size_t>(t)].f_bar_value;
        worst = std::max(worst, (fbar - ref.f_value) - bound);
        ++prefixes;
      }
    }
    reports.push_back(make_report("solver/certificate-prefix", prefixes, worst,
                                  config.certificate_slack));
  }
  {
    // Built-in fixture with one symbol no row ever emits: its coordinate must
    // decay like 1/(step * t), i.e. x * step * t stays below a constant.
    ArrayXd w(2);
    w << 0.5, 0.5;
    RowArrayXXd rows(2, 3);
    rows << 0.6, 0.4, 0.0, 0.3, 0.7, 0.0;
    const ChannelInstance fixture(w, rows);
    SolverConfig cfg(Order(1.0));
    cfg.max_iters = config.boundary_decay_iters;
    cfg.trace_every = config.boundary_decay_iters;
    const SolveResult run = rgd_solve(fixture, cfg);
    const double product =
        run.final_x[2] * cfg.step() * static_cast<double>(run.iterations);
    reports.push_back(make_report("solver/boundary-decay", 1, product,
                                  config.boundary_rate_const));
  }

  return reports;
}

}  // namespace augustin
