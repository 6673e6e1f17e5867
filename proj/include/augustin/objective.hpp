#pragma once

#include "augustin/channel.hpp"
#include "augustin/geometry.hpp"

namespace augustin {

// Evaluates the weighted Renyi objective
//
//   f_alpha(x) = sum_m w_m D_alpha(p_m || x)
//
// for one (instance, order) pair. The per-row reweighting alpha * log p_m is
// precomputed so each evaluation is a single pass over the row matrix: one
// log of x, M log-sum-exp reductions, and (optionally) one gradient
// accumulation. Row terms are accumulated with compensated summation in
// ascending row order; within a row, letters are reduced in ascending order.
//
// An evaluator owns mutable scratch buffers, so one evaluator must not be
// shared across threads. The free functions below build a fresh evaluator
// per call and are pure.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const ChannelInstance& instance, Order order);

  const ChannelInstance& instance() const { return *instance_; }
  Order order() const { return order_; }

  // f_alpha(x) for x >= 0 (boundary allowed). Returns +infinity when some
  // row's divergence diverges: order > 1 with mass on a zero coordinate of
  // x, order < 1 (or one) with a row whose support misses the support of x.
  double value(const Eigen::Ref<const ArrayXd>& x);

  // Fused sweep for strictly positive x. Returns f_alpha(x) and fills, when
  // non-null:
  //   grad_f: the Euclidean gradient of f_alpha at x,
  //   mean:   x .* (-grad_f), the one-step update map. Its image is a point
  //           of the closed simplex for every strictly positive x.
  double value_grad_mean(const Eigen::Ref<const ArrayXd>& x, ArrayXd* grad_f,
                         ArrayXd* mean);

  // Per-row conditional first and second moments of h under the tilted row
  // distributions s^(m)(x) with s_i proportional to p_i^alpha x_i^(1-alpha)
  // (s = p at order one): first(m) = <s^(m), h>, second(m) = <s^(m), h.^2>.
  // Returns f_alpha(x). x must be strictly positive.
  double row_tilted_moments(const Eigen::Ref<const ArrayXd>& x,
                            const Eigen::Ref<const ArrayXd>& h, ArrayXd& first,
                            ArrayXd& second);

  // E_p[p], the weight-averaged row; the closed-form minimizer at order one.
  const ArrayXd& average_row();

 private:
  double value_with_boundary(const Eigen::Ref<const ArrayXd>& x);

  const ChannelInstance* instance_;
  Order order_;

  RowArrayXXd alpha_log_rows_;   // alpha * log p, -inf where p = 0 (order != 1)
  ArrayXd neg_entropy_;          // sum_i p_i log p_i per row (order one)
  ArrayXd average_row_;          // E_p[p], filled lazily
  bool average_row_ready_ = false;

  // Scratch, sized to the alphabet.
  ArrayXd log_x_;
  ArrayXd terms_;
  ArrayXd expo_;
  KahanArray accum_;
};

// Renyi divergence D_alpha(p || x) of a single row against a reference
// measure. Nonnegative for simplex x; +infinity exactly in the divergent
// support cases documented on ObjectiveEvaluator::value.
double renyi_divergence(const Eigen::Ref<const ArrayXd>& p,
                        const Eigen::Ref<const ArrayXd>& x, Order order);

// f_alpha and the relaxed objective g_alpha(x) = <1, x> + f_alpha(x).
double f_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
               Order order);
double g_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
               Order order);
inline double f_alpha(const ChannelInstance& instance, const PositivePoint& x, Order order) {
  return f_alpha(instance, x.coords(), order);
}
inline double g_alpha(const ChannelInstance& instance, const PositivePoint& x, Order order) {
  return g_alpha(instance, x.coords(), order);
}

// Euclidean gradients; x must be strictly positive and f_alpha(x) finite.
ArrayXd grad_f_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
                     Order order);
ArrayXd grad_g_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
                     Order order);

// Closed form at order one: the minimizer is the average row E_p[p] and the
// optimal value is the mutual information of (weights, rows).
struct Order1Solution {
  ArrayXd minimizer;          // E_p[p], a closed-simplex point
  double mutual_information;  // f_1 at the minimizer
};
Order1Solution order1_solution(const ChannelInstance& instance);

}  // namespace augustin
