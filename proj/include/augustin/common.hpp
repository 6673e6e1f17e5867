#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>

namespace augustin {

using Eigen::Index;

template <class Scalar>
using ArrayX = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using ArrayXd = Eigen::ArrayXd;

// Conditional rows are stored row-major so each row is a contiguous slice.
using RowArrayXXd = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown when a caller breaks a documented precondition: dimension mismatch,
// mixed tangent bases, out-of-range parameters, broken type invariants.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw contract_error(message);
}

// Default tolerances and knobs. Everything a check compares against lives
// here rather than inline at the call site, so tests and callers can see (and
// override) the exact numbers in one place.
namespace defaults {

// Solver controls.
inline constexpr int kMaxIters = 10000;
inline constexpr double kGradTol = 1e-10;
inline constexpr int kTraceEvery = 1;
inline constexpr double kCoordinateFloor = 1e-300;

// Divergence detectors.
inline constexpr double kObjectiveIncreaseTol = 1e-9;  // RGD: g must not rise by more
inline constexpr int kOscillationWindow = 100;         // fixed point: trailing window length
inline constexpr double kOscillationAmplitude = 1e-6;

// Probability-vector invariants.
inline constexpr double kSumTol = 1e-12;      // in-memory sum-to-one tolerance
inline constexpr double kFileSumTol = 1e-9;   // parse-time tolerance, before renormalization

// Geometry checks.
inline constexpr double kExpLogInversionTol = 1e-10;  // relative, per coordinate
inline constexpr double kDistanceSymmetryTol = 1e-12; // relative
inline constexpr double kTriangleSlack = 1e-12;       // absolute
inline constexpr double kNormDistanceTol = 1e-12;     // relative
inline constexpr double kRieszTol = 1e-12;            // relative
inline constexpr double kGeodesicParamTol = 1e-10;    // relative

// Objective checks.
inline constexpr double kFiniteDiffStep = 1e-6;
inline constexpr double kGradCheckTol = 1e-6;     // relative, against central differences
inline constexpr double kSimplexImageTol = 1e-12;
inline constexpr double kConvexitySlack = 1e-12;
inline constexpr double kKlLimitEps = 1e-4;       // probe order offset around 1
inline constexpr double kKlLimitCalibEps = 1e-3;  // offset used to calibrate the constant

// Solver checks.
inline constexpr double kBoxSlack = 1e-12;               // iterates stay below 1 + this
inline constexpr double kDescentSlack = 1e-12;           // per-step g increase allowed
inline constexpr double kSufficientDecreaseSlack = 1e-10;
inline constexpr double kPathEquivalenceTol = 1e-14;     // relative, per coordinate
inline constexpr double kCertificateBoundaryEscape = 1e-12;

// Smoothness probe slacks (second differences vs. the curvature bound).
inline constexpr int kSmoothnessSamples = 2001;
inline constexpr double kSmoothnessRelSlack = 1e-4;
inline constexpr double kSmoothnessAbsSlack = 1e-9;
inline constexpr double kQuantityRangeSlack = 1e-9;
inline constexpr double kQuantityNegativeSlack = 1e-12;

// Grid oracle.
inline constexpr int kGridResolution = 2000;
inline constexpr int kGridZoomRounds = 3;
inline constexpr int kGridZoomFactor = 10;

}  // namespace defaults

}  // namespace augustin
