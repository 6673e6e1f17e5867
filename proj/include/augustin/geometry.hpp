#pragma once

#include "augustin/common.hpp"
#include "augustin/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

// The positive orthant R^N_{++} with the Poincare-style metric
// <u, v>_x = <u ./ x, v ./ x>. Every map below has a closed form: geodesics
// are coordinatewise geometric interpolations, exp/log are coordinatewise
// exp/log of ratios, and distances are Euclidean norms of log-ratios.
// Templated on the scalar so tests can rerun the same code in long double.

namespace augustin {

// Point on the manifold: every coordinate finite and strictly positive.
template <class Scalar = double>
class PositivePointT {
 public:
  explicit PositivePointT(ArrayX<Scalar> coords) : coords_(std::move(coords)) {
    require(coords_.size() >= 1, "PositivePoint: dimension must be at least 1");
    require(coords_.isFinite().all(), "PositivePoint: coordinates must be finite");
    require((coords_ > Scalar(0)).all(),
            "PositivePoint: coordinates must be strictly positive");
  }

  // The barycenter 1/N * ones, the conventional solver start.
  static PositivePointT uniform(Index n) {
    require(n >= 1, "PositivePoint: dimension must be at least 1");
    return PositivePointT(ArrayX<Scalar>::Constant(n, Scalar(1) / static_cast<Scalar>(n)));
  }

  Index size() const { return coords_.size(); }
  const ArrayX<Scalar>& coords() const { return coords_; }
  Scalar operator[](Index i) const { return coords_(i); }

 private:
  ArrayX<Scalar> coords_;
};

// Tangent vector anchored at a base point. Operations that combine two
// tangent vectors require bitwise-identical base coordinates; there is no
// implicit parallel transport.
template <class Scalar = double>
class TangentVectorT {
 public:
  TangentVectorT(PositivePointT<Scalar> base, ArrayX<Scalar> direction)
      : base_(std::move(base)), direction_(std::move(direction)) {
    require(base_.size() == direction_.size(),
            "TangentVector: base and direction dimensions must match");
    require(direction_.isFinite().all(), "TangentVector: direction must be finite");
  }

  Index size() const { return direction_.size(); }
  const PositivePointT<Scalar>& base() const { return base_; }
  const ArrayX<Scalar>& direction() const { return direction_; }

 private:
  PositivePointT<Scalar> base_;
  ArrayX<Scalar> direction_;
};

using PositivePoint = PositivePointT<double>;
using TangentVector = TangentVectorT<double>;

namespace detail {

template <class Scalar>
void require_same_base(const TangentVectorT<Scalar>& u, const TangentVectorT<Scalar>& v) {
  require(u.size() == v.size() && (u.base().coords() == v.base().coords()).all(),
          "tangent vectors must share a base point");
}

}  // namespace detail

// <u, v>_x = sum_i u_i v_i / x_i^2.
template <class Scalar>
Scalar poincare_inner(const TangentVectorT<Scalar>& u, const TangentVectorT<Scalar>& v) {
  detail::require_same_base(u, v);
  const ArrayX<Scalar>& x = u.base().coords();
  KahanSum<Scalar> acc;
  for (Index i = 0; i < x.size(); ++i)
    acc.add(u.direction()(i) * v.direction()(i) / (x(i) * x(i)));
  return acc.value();
}

template <class Scalar>
Scalar poincare_norm(const TangentVectorT<Scalar>& v) {
  using std::sqrt;
  return sqrt(poincare_inner(v, v));
}

// d(x, y) = || log(y ./ x) ||_2.
template <class Scalar>
Scalar poincare_dist(const PositivePointT<Scalar>& x, const PositivePointT<Scalar>& y) {
  require(x.size() == y.size(), "poincare_dist: dimensions must match");
  using std::log;
  using std::sqrt;
  KahanSum<Scalar> acc;
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar l = log(y[i] / x[i]);
    acc.add(l * l);
  }
  return sqrt(acc.value());
}

// exp_x(v) = x .* exp(v ./ x). Stays on the manifold for every finite v in
// exact arithmetic; in floating point a coordinate can overflow to infinity
// or underflow to zero, and either is reported instead of returned.
template <class Scalar>
PositivePointT<Scalar> poincare_exp(const TangentVectorT<Scalar>& v) {
  const ArrayX<Scalar>& x = v.base().coords();
  ArrayX<Scalar> result = x * (v.direction() / x).exp();
  if (!result.isFinite().all())
    throw std::overflow_error("poincare_exp: coordinate overflowed to infinity");
  if (!(result > Scalar(0)).all())
    throw std::underflow_error("poincare_exp: coordinate underflowed to zero");
  return PositivePointT<Scalar>(std::move(result));
}

// log_x(y) = x .* log(y ./ x); inverse of poincare_exp at the same base.
template <class Scalar>
TangentVectorT<Scalar> poincare_log(const PositivePointT<Scalar>& x,
                                    const PositivePointT<Scalar>& y) {
  require(x.size() == y.size(), "poincare_log: dimensions must match");
  ArrayX<Scalar> direction = x.coords() * (y.coords() / x.coords()).log();
  return TangentVectorT<Scalar>(x, std::move(direction));
}

// gamma(t) = x.^(1-t) .* y.^t, the unit-speed-parameterized geodesic from
// x (t = 0) to y (t = 1).
template <class Scalar>
PositivePointT<Scalar> geodesic_point(const PositivePointT<Scalar>& x,
                                      const PositivePointT<Scalar>& y, Scalar t) {
  require(x.size() == y.size(), "geodesic_point: dimensions must match");
  require(t >= Scalar(0) && t <= Scalar(1), "geodesic_point: t must lie in [0, 1]");
  ArrayX<Scalar> coords = x.coords().pow(Scalar(1) - t) * y.coords().pow(t);
  return PositivePointT<Scalar>(std::move(coords));
}

// Riesz representer of the differential: grad f(x) = x.^2 .* egrad f(x), so
// that <grad f(x), v>_x = <egrad f(x), v> for every tangent v.
template <class Scalar>
TangentVectorT<Scalar> riemannian_grad(const PositivePointT<Scalar>& x,
                                       const ArrayX<Scalar>& euclidean_grad) {
  require(x.size() == euclidean_grad.size(), "riemannian_grad: dimensions must match");
  require(euclidean_grad.isFinite().all(), "riemannian_grad: gradient must be finite");
  ArrayX<Scalar> direction = x.coords() * x.coords() * euclidean_grad;
  return TangentVectorT<Scalar>(x, std::move(direction));
}

}  // namespace augustin
