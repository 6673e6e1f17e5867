#pragma once

#include "augustin/common.hpp"

#include <cmath>
#include <random>

// Deterministic sampling helpers. std::mt19937_64's output sequence is fixed
// by the standard, and doubles are derived from raw 64-bit draws with plain
// shift-and-scale arithmetic (never std::uniform_real_distribution, whose
// stream is implementation-defined), so every sample here is identical across
// platforms and standard libraries for a given seed.

namespace augustin {

// Uniform draw in the half-open interval (0, 1]; safe to pass to log().
inline double unit_double(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform draw on [lo, hi] in log scale; for spreading test points across
// orders of magnitude.
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(unit_double(rng) * std::log(hi / lo));
}

// Uniform point of the open probability simplex via exponential spacings:
// N i.i.d. standard exponentials normalized by their sum (Dirichlet(1,..,1)).
inline ArrayXd sample_simplex(std::mt19937_64& rng, Index n) {
  require(n >= 1, "sample_simplex: dimension must be at least 1");
  ArrayXd e(n);
  for (Index i = 0; i < n; ++i) e(i) = -std::log(unit_double(rng));
  return e / e.sum();
}

// Point with independent log-uniform coordinates in [lo, hi].
inline ArrayXd sample_box(std::mt19937_64& rng, Index n, double lo, double hi) {
  require(n >= 1 && lo > 0.0 && hi >= lo, "sample_box: invalid range");
  ArrayXd x(n);
  for (Index i = 0; i < n; ++i) x(i) = log_uniform(rng, lo, hi);
  return x;
}

}  // namespace augustin
