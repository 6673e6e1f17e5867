#pragma once

#include "augustin/common.hpp"
#include "augustin/numerics.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace augustin {

// Order of the Renyi divergence. Strictly positive and finite; order one is
// the KL limit and every kernel branches on it rather than evaluating the
// generic formula near the removable singularity.
class Order {
 public:
  enum class Kind { below_one, one, above_one };

  explicit Order(double alpha) : alpha_(alpha) {
    require(std::isfinite(alpha_) && alpha_ > 0.0,
            "Order: alpha must be finite and strictly positive");
    kind_ = alpha_ < 1.0 ? Kind::below_one : (alpha_ == 1.0 ? Kind::one : Kind::above_one);
  }

  double alpha() const { return alpha_; }
  Kind kind() const { return kind_; }
  bool is_one() const { return kind_ == Kind::one; }

  // Smoothness constant of the relaxed objective under the Poincare metric.
  double smoothness() const { return std::abs(1.0 - alpha_) + 1.0; }

  // Default gradient step, the reciprocal of the smoothness constant.
  double default_step() const { return 1.0 / smoothness(); }

 private:
  double alpha_;
  Kind kind_;
};

// One conditional distribution over the output alphabet: entries in [0, 1],
// summing to one. Stored as a row of ChannelInstance::rows().
using ChannelRow = ArrayXd;

// A finite-alphabet channel with an input distribution: M conditional rows
// over an N-letter output alphabet plus input weights. An output letter no
// row ever produces is a vacuous symbol; instances may carry them and the
// flag records that the minimizer can push those coordinates to the boundary.
class ChannelInstance {
 public:
  ChannelInstance(ArrayXd weights, RowArrayXXd rows)
      : weights_(std::move(weights)), rows_(std::move(rows)) {
    require(rows_.rows() >= 1 && rows_.cols() >= 1,
            "ChannelInstance: need at least one row and one output letter");
    require(weights_.size() == rows_.rows(),
            "ChannelInstance: one weight per row required");
    require(weights_.isFinite().all() && (weights_ >= 0.0).all(),
            "ChannelInstance: weights must be finite and nonnegative");
    require(std::abs(kahan_total(weights_) - 1.0) <= defaults::kSumTol,
            "ChannelInstance: weights must sum to one");
    require(rows_.isFinite().all() && (rows_ >= 0.0).all() && (rows_ <= 1.0).all(),
            "ChannelInstance: row entries must lie in [0, 1]");
    for (Index m = 0; m < rows_.rows(); ++m) {
      ArrayXd row = rows_.row(m).transpose();
      require(std::abs(kahan_total(row) - 1.0) <= defaults::kSumTol,
              "ChannelInstance: every row must sum to one");
    }
    for (Index i = 0; i < rows_.cols(); ++i)
      if ((rows_.col(i) == 0.0).all()) vacuous_symbols_.push_back(i);
  }

  static ChannelInstance with_uniform_weights(RowArrayXXd rows) {
    const Index m = rows.rows();
    require(m >= 1, "ChannelInstance: need at least one row");
    return ChannelInstance(ArrayXd::Constant(m, 1.0 / static_cast<double>(m)),
                           std::move(rows));
  }

  Index input_count() const { return rows_.rows(); }     // M
  Index alphabet_size() const { return rows_.cols(); }   // N
  const ArrayXd& weights() const { return weights_; }
  const RowArrayXXd& rows() const { return rows_; }
  auto row(Index m) const { return rows_.row(m).transpose(); }

  bool has_vacuous_symbol() const { return !vacuous_symbols_.empty(); }
  const std::vector<Index>& vacuous_symbols() const { return vacuous_symbols_; }

 private:
  ArrayXd weights_;
  RowArrayXXd rows_;
  std::vector<Index> vacuous_symbols_;
};

}  // namespace augustin
