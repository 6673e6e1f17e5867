#include "augustin/objective.hpp"

#include <cmath>

namespace augustin {

namespace {

// Shared order-dependent constant: 1 / (alpha - 1), only used off order one.
double inv_alpha_minus_one(Order order) { return 1.0 / (order.alpha() - 1.0); }

}  // namespace

ObjectiveEvaluator::ObjectiveEvaluator(const ChannelInstance& instance, Order order)
    : instance_(&instance),
      order_(order),
      log_x_(instance.alphabet_size()),
      terms_(instance.alphabet_size()),
      expo_(instance.alphabet_size()),
      accum_(instance.alphabet_size()) {
  const Index m = instance.input_count();
  const Index n = instance.alphabet_size();
  if (order_.is_one()) {
    neg_entropy_.resize(m);
    for (Index r = 0; r < m; ++r) {
      KahanSum<double> acc;
      for (Index i = 0; i < n; ++i) {
        const double p = instance.rows()(r, i);
        if (p > 0.0) acc.add(p * std::log(p));
      }
      neg_entropy_(r) = acc.value();
    }
  } else {
    // alpha * log p; zero row entries become -inf and drop out of every
    // log-sum-exp below as exp(-inf) = 0.
    alpha_log_rows_ = order_.alpha() * instance.rows().log();
  }
}

double ObjectiveEvaluator::value(const Eigen::Ref<const ArrayXd>& x) {
  require(x.size() == instance_->alphabet_size(), "objective: dimension mismatch");
  require(x.isFinite().all() && (x >= 0.0).all(),
          "objective: reference point must be finite and nonnegative");
  if ((x > 0.0).all()) return value_grad_mean(x, nullptr, nullptr);
  return value_with_boundary(x);
}

double ObjectiveEvaluator::value_grad_mean(const Eigen::Ref<const ArrayXd>& x,
                                           ArrayXd* grad_f, ArrayXd* mean) {
  const Index m_count = instance_->input_count();
  const Index n = instance_->alphabet_size();
  require(x.size() == n, "objective: dimension mismatch");
  require(x.isFinite().all() && (x > 0.0).all(),
          "objective: evaluation point must be finite and strictly positive");

  const ArrayXd& w = instance_->weights();
  const bool want_acc = grad_f != nullptr || mean != nullptr;
  if (want_acc) accum_.reset();
  KahanSum<double> f_acc;
  log_x_ = x.log();

  if (order_.is_one()) {
    for (Index r = 0; r < m_count; ++r) {
      if (w(r) == 0.0) continue;  // zero-weight rows contribute nothing
      terms_ = instance_->rows().row(r).transpose() * log_x_;
      f_acc.add(w(r) * (neg_entropy_(r) - kahan_total(terms_)));
      if (want_acc) accum_.add(w(r) * instance_->rows().row(r).transpose());
    }
  } else {
    const double scale = 1.0 - order_.alpha();
    const double inv_am1 = inv_alpha_minus_one(order_);
    for (Index r = 0; r < m_count; ++r) {
      if (w(r) == 0.0) continue;
      terms_ = alpha_log_rows_.row(r).transpose() + scale * log_x_;
      // The row has support and x > 0, so the maximum is finite and the
      // shifted exponentials stay in [0, 1].
      const double tmax = terms_.maxCoeff();
      expo_ = (terms_ - tmax).exp();
      const double total = kahan_total(expo_);
      f_acc.add(w(r) * inv_am1 * (tmax + std::log(total)));
      if (want_acc) accum_.add((w(r) / total) * expo_);
    }
  }

  if (mean != nullptr) *mean = accum_.value();
  if (grad_f != nullptr) *grad_f = -(accum_.value() / x);
  return f_acc.value();
}

// Boundary evaluation: x may have zero coordinates. Divergence rules:
//   order >= 1: +inf as soon as some positive-weight row puts mass on a zero
//               coordinate of x;
//   order < 1:  letters with p > 0, x = 0 contribute nothing, and a row whose
//               support misses the support of x entirely diverges.
double ObjectiveEvaluator::value_with_boundary(const Eigen::Ref<const ArrayXd>& x) {
  const Index m_count = instance_->input_count();
  const Index n = instance_->alphabet_size();
  const ArrayXd& w = instance_->weights();
  const auto& rows = instance_->rows();

  if (order_.kind() != Order::Kind::below_one) {
    for (Index r = 0; r < m_count; ++r) {
      if (w(r) == 0.0) continue;
      for (Index i = 0; i < n; ++i)
        if (rows(r, i) > 0.0 && x(i) == 0.0) return kInf;
    }
  }

  KahanSum<double> f_acc;
  if (order_.is_one()) {
    for (Index r = 0; r < m_count; ++r) {
      if (w(r) == 0.0) continue;
      KahanSum<double> dot;
      for (Index i = 0; i < n; ++i) {
        const double p = rows(r, i);
        if (p > 0.0) dot.add(p * std::log(x(i)));
      }
      f_acc.add(w(r) * (neg_entropy_(r) - dot.value()));
    }
    return f_acc.value();
  }

  const double scale = 1.0 - order_.alpha();
  const double inv_am1 = inv_alpha_minus_one(order_);
  for (Index r = 0; r < m_count; ++r) {
    if (w(r) == 0.0) continue;
    Index count = 0;
    double tmax = -kInf;
    for (Index i = 0; i < n; ++i) {
      if (rows(r, i) <= 0.0 || x(i) <= 0.0) continue;
      const double t = alpha_log_rows_(r, i) + scale * std::log(x(i));
      terms_(count++) = t;
      if (t > tmax) tmax = t;
    }
    if (count == 0) return kInf;  // only reachable below order one
    KahanSum<double> esum;
    for (Index j = 0; j < count; ++j) esum.add(std::exp(terms_(j) - tmax));
    f_acc.add(w(r) * inv_am1 * (tmax + std::log(esum.value())));
  }
  return f_acc.value();
}

double ObjectiveEvaluator::row_tilted_moments(const Eigen::Ref<const ArrayXd>& x,
                                              const Eigen::Ref<const ArrayXd>& h,
                                              ArrayXd& first, ArrayXd& second) {
  const Index m_count = instance_->input_count();
  const Index n = instance_->alphabet_size();
  require(x.size() == n && h.size() == n, "objective: dimension mismatch");
  require(x.isFinite().all() && (x > 0.0).all(),
          "objective: evaluation point must be finite and strictly positive");
  require(h.isFinite().all(), "objective: direction must be finite");

  const ArrayXd& w = instance_->weights();
  first.resize(m_count);
  second.resize(m_count);
  KahanSum<double> f_acc;
  log_x_ = x.log();

  if (order_.is_one()) {
    for (Index r = 0; r < m_count; ++r) {
      const auto row = instance_->rows().row(r).transpose();
      terms_ = row * log_x_;
      if (w(r) != 0.0) f_acc.add(w(r) * (neg_entropy_(r) - kahan_total(terms_)));
      first(r) = kahan_total(row * h);
      second(r) = kahan_total(row * h * h);
    }
    return f_acc.value();
  }

  const double scale = 1.0 - order_.alpha();
  const double inv_am1 = inv_alpha_minus_one(order_);
  for (Index r = 0; r < m_count; ++r) {
    terms_ = alpha_log_rows_.row(r).transpose() + scale * log_x_;
    const double tmax = terms_.maxCoeff();
    expo_ = (terms_ - tmax).exp();
    const double total = kahan_total(expo_);
    if (w(r) != 0.0) f_acc.add(w(r) * inv_am1 * (tmax + std::log(total)));
    first(r) = kahan_total(expo_ * h) / total;
    second(r) = kahan_total(expo_ * h * h) / total;
  }
  return f_acc.value();
}

const ArrayXd& ObjectiveEvaluator::average_row() {
  if (!average_row_ready_) {
    KahanArray acc(instance_->alphabet_size());
    for (Index r = 0; r < instance_->input_count(); ++r)
      acc.add(instance_->weights()(r) * instance_->rows().row(r).transpose());
    average_row_ = acc.value();
    average_row_ready_ = true;
  }
  return average_row_;
}

double renyi_divergence(const Eigen::Ref<const ArrayXd>& p,
                        const Eigen::Ref<const ArrayXd>& x, Order order) {
  const Index n = p.size();
  require(n >= 1 && x.size() == n, "renyi_divergence: dimensions must match");
  require(p.isFinite().all() && (p >= 0.0).all(),
          "renyi_divergence: first argument must be nonnegative and finite");
  require(x.isFinite().all() && (x >= 0.0).all(),
          "renyi_divergence: second argument must be nonnegative and finite");

  if (order.is_one()) {
    KahanSum<double> acc;
    for (Index i = 0; i < n; ++i) {
      if (p(i) <= 0.0) continue;
      if (x(i) == 0.0) return kInf;
      acc.add(p(i) * std::log(p(i) / x(i)));
    }
    return acc.value();
  }

  const double alpha = order.alpha();
  if (order.kind() == Order::Kind::above_one)
    for (Index i = 0; i < n; ++i)
      if (p(i) > 0.0 && x(i) == 0.0) return kInf;

  // log-sum-exp over the common support of p and x
  Index count = 0;
  double tmax = -kInf;
  ArrayXd terms(n);
  for (Index i = 0; i < n; ++i) {
    if (p(i) <= 0.0 || x(i) <= 0.0) continue;
    const double t = alpha * std::log(p(i)) + (1.0 - alpha) * std::log(x(i));
    terms(count++) = t;
    if (t > tmax) tmax = t;
  }
  if (count == 0) return kInf;
  KahanSum<double> esum;
  for (Index j = 0; j < count; ++j) esum.add(std::exp(terms(j) - tmax));
  return (tmax + std::log(esum.value())) / (alpha - 1.0);
}

double f_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
               Order order) {
  ObjectiveEvaluator eval(instance, order);
  return eval.value(x);
}

double g_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
               Order order) {
  return kahan_total(x) + f_alpha(instance, x, order);
}

ArrayXd grad_f_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
                     Order order) {
  ObjectiveEvaluator eval(instance, order);
  ArrayXd grad;
  eval.value_grad_mean(x, &grad, nullptr);
  return grad;
}

ArrayXd grad_g_alpha(const ChannelInstance& instance, const Eigen::Ref<const ArrayXd>& x,
                     Order order) {
  return grad_f_alpha(instance, x, order) + 1.0;
}

Order1Solution order1_solution(const ChannelInstance& instance) {
  ObjectiveEvaluator eval(instance, Order(1.0));
  Order1Solution solution;
  solution.minimizer = eval.average_row();
  solution.mutual_information = eval.value(solution.minimizer);
  return solution;
}

}  // namespace augustin
