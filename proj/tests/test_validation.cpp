#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "augustin/instance_io.hpp"
#include "augustin/rng.hpp"
#include "augustin/validation.hpp"

#include <cmath>
#include <random>

using namespace augustin;

namespace {

ArrayXd make2(double a, double b) {
  ArrayXd v(2);
  v << a, b;
  return v;
}

ChannelInstance noiseless_binary() {
  RowArrayXXd rows(2, 2);
  rows << 1, 0, 0, 1;
  return ChannelInstance::with_uniform_weights(rows);
}

// A quicker suite configuration for unit tests; thresholds stay at defaults.
SuiteConfig quick_config() {
  SuiteConfig config;
  config.geometry_samples = 50;
  config.riesz_trials = 200;
  config.objective_samples = 50;
  config.gradient_samples = 16;
  config.smoothness_pairs = 1;
  config.solver_iters = 300;
  config.certificate_iters = 200;
  config.certificate_ref_iters = 2000;
  config.vanishing_grad_iters = 3000;
  config.boundary_decay_iters = 5000;
  return config;
}

}  // namespace

TEST_CASE("finite differences see the linear part of the relaxation") {
  ChannelInstance inst = gen_instance(4, 5, 61);
  std::mt19937_64 rng(61);
  ArrayXd x = sample_box(rng, 5, 1e-2, 1.0);
  ArrayXd fd_f = finite_diff_grad(ObjectiveKind::f, inst, x, Order(2.0));
  ArrayXd fd_g = finite_diff_grad(ObjectiveKind::g, inst, x, Order(2.0));
  for (Index i = 0; i < 5; ++i)
    CHECK(std::abs((fd_g(i) - fd_f(i)) - 1.0) <= 1e-8);
}

TEST_CASE("finite differences confirm the closed-form gradient") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    ChannelInstance inst = gen_instance(6, 4, 620 + trial);
    ArrayXd x = sample_box(rng, 4, 1e-2, 1.0);
    for (double a : {0.5, 1.0, 3.0}) {
      ArrayXd fd = finite_diff_grad(ObjectiveKind::f, inst, x, Order(a));
      ArrayXd an = grad_f_alpha(inst, x, Order(a));
      const double scale = std::max(1.0, fd.abs().maxCoeff());
      CHECK((an - fd).abs().maxCoeff() / scale <= defaults::kGradCheckTol);
    }
  }
}

TEST_CASE("finite differences vanish at the symmetric optimum") {
  ChannelInstance inst = noiseless_binary();
  ArrayXd x = make2(0.5, 0.5);
  ArrayXd fd = finite_diff_grad(ObjectiveKind::g, inst, x, Order(3.0));
  CHECK(std::abs(x(0) * fd(0)) <= 1e-8);
  CHECK(std::abs(x(1) * fd(1)) <= 1e-8);
}

TEST_CASE("finite differences demand room for the stencil") {
  ChannelInstance inst = noiseless_binary();
  CHECK_THROWS_AS(
      finite_diff_grad(ObjectiveKind::f, inst, make2(1e-7, 1.0), Order(2.0)),
      contract_error);
}

TEST_CASE("smoothness probe: coincident endpoints are exactly flat") {
  ChannelInstance inst = gen_instance(4, 4, 63);
  PositivePoint x(ArrayXd::Constant(4, 0.25));
  for (double a : {0.5, 1.0, 3.0}) {
    ProbeReport r = smoothness_probe(inst, x, x, Order(a), 201);
    CHECK(r.pass);
    CHECK(r.worst_violation <= 0.0);
  }
}

TEST_CASE("smoothness probe: single-row crossing pair at order two") {
  RowArrayXXd rows(1, 2);
  rows << 0.5, 0.5;
  ChannelInstance inst = ChannelInstance::with_uniform_weights(rows);
  ProbeReport r = smoothness_probe(inst, PositivePoint(make2(0.4, 0.6)),
                                   PositivePoint(make2(0.6, 0.4)), Order(2.0));
  CHECK(r.pass);
}

TEST_CASE("smoothness probe: random unit-box pairs across orders") {
  std::mt19937_64 rng(64);
  ChannelInstance inst = gen_instance(8, 6, 64);
  for (double a : {0.3, 0.5, 2.0, 3.0}) {
    PositivePoint x(sample_box(rng, 6, 1e-2, 1.0));
    PositivePoint y(sample_box(rng, 6, 1e-2, 1.0));
    ProbeReport r = smoothness_probe(inst, x, y, Order(a));
    CHECK(r.pass);
  }
}

TEST_CASE("smoothness probe preconditions") {
  ChannelInstance inst = noiseless_binary();
  PositivePoint in(make2(0.5, 0.5));
  CHECK_THROWS_AS(
      smoothness_probe(inst, PositivePoint(make2(1.5, 0.5)), in, Order(2.0)),
      contract_error);
  CHECK_THROWS_AS(smoothness_probe(inst, in, in, Order(2.0), 2), contract_error);
}

TEST_CASE("tilted second moment at the geodesic start, recomputed naively") {
  RowArrayXXd rows(2, 3);
  rows << 0.2, 0.5, 0.3, 0.6, 0.1, 0.3;
  ChannelInstance inst = ChannelInstance::with_uniform_weights(rows);
  ArrayXd x(3), y(3);
  x << 0.4, 0.3, 0.3;
  y << 0.2, 0.4, 0.4;
  const ArrayXd ell = (y / x).log();
  const double alpha = 2.0;

  ObjectiveEvaluator eval(inst, Order(alpha));
  ArrayXd first(2), second(2);
  eval.row_tilted_moments(x, ell, first, second);

  for (Index m = 0; m < 2; ++m) {
    long double z = 0.0L, q2 = 0.0L;
    for (Index i = 0; i < 3; ++i) {
      const long double s = std::pow(static_cast<long double>(rows(m, i)), alpha) *
                            std::pow(static_cast<long double>(x(i)), 1.0L - alpha);
      z += s;
      q2 += s * ell(i) * ell(i);
    }
    CHECK(std::abs(second(m) - static_cast<double>(q2 / z)) <= 1e-12);
  }
}

TEST_CASE("grid oracle solves the noiseless binary channel") {
  GridOracleResult res = grid_oracle(noiseless_binary(), Order(2.0));
  CHECK(std::abs(res.value - std::log(2.0)) <= 1e-9);
  CHECK(std::abs(res.minimizer(0) - 0.5) <= 1e-5);
}

TEST_CASE("grid oracle finds a single-row optimum at the row itself") {
  RowArrayXXd rows2(1, 2);
  rows2 << 0.3, 0.7;
  GridOracleResult res2 =
      grid_oracle(ChannelInstance::with_uniform_weights(rows2), Order(0.5));
  CHECK(res2.value <= 1e-9);
  CHECK(std::abs(res2.minimizer(0) - 0.3) <= 1e-5);

  RowArrayXXd rows3(1, 3);
  rows3 << 0.2, 0.5, 0.3;
  GridOracleResult res3 =
      grid_oracle(ChannelInstance::with_uniform_weights(rows3), Order(2.0), 400);
  CHECK(res3.value <= 1e-7);
}

TEST_CASE("grid oracle agrees with the descent solver on tiny alphabets") {
  for (std::uint64_t seed : {201ULL, 202ULL}) {
    ChannelInstance inst = gen_instance(3, 2, seed);
    GridOracleResult grid = grid_oracle(inst, Order(0.7));
    SolverConfig config(Order(0.7));
    config.max_iters = 20000;
    SolveResult rgd = rgd_solve(inst, config);
    CHECK(rgd.status == SolveStatus::converged);
    CHECK(std::abs(grid.value - rgd.f_value) <= 1e-6);
  }
}

TEST_CASE("doubling the grid resolution never worsens the oracle") {
  ChannelInstance inst = gen_instance(3, 2, 65);
  for (double a : {0.7, 2.0}) {
    const double coarse = grid_oracle(inst, Order(a), 2000).value;
    const double fine = grid_oracle(inst, Order(a), 4000).value;
    CHECK(fine <= coarse + 1e-9);
  }
}

TEST_CASE("grid oracle rejects unsupported alphabets") {
  ChannelInstance inst = gen_instance(2, 4, 66);
  CHECK_THROWS_AS(grid_oracle(inst, Order(2.0)), contract_error);
  CHECK_THROWS_AS(grid_oracle(gen_instance(2, 2, 66), Order(2.0), 1), contract_error);
}

TEST_CASE("riesz probe: zero gradient and identity base are exact") {
  PositivePoint x(make2(0.5, 0.25));
  ProbeReport zero = riesz_probe(x, ArrayXd::Zero(2), 10, 1);
  CHECK(zero.pass);
  CHECK(zero.worst_violation == 0.0);

  ArrayXd egrad(3);
  egrad << 1.5, -2.0, 0.25;
  ProbeReport ident = riesz_probe(PositivePoint(ArrayXd::Constant(3, 1.0)), egrad,
                                  100, 2);
  CHECK(ident.pass);
}

TEST_CASE("riesz probe: a thousand random pairings agree") {
  std::mt19937_64 rng(67);
  PositivePoint x(sample_box(rng, 8, 0.1, 1.0));
  ArrayXd egrad(8);
  for (Index i = 0; i < 8; ++i) egrad(i) = 4.0 * unit_double(rng) - 2.0;
  ProbeReport r = riesz_probe(x, egrad, 1000, 3);
  CHECK(r.pass);
  CHECK(r.samples == 1000);

  // Same seed, same report; different seed may move the worst case.
  ProbeReport again = riesz_probe(x, egrad, 1000, 3);
  CHECK(again.worst_violation == r.worst_violation);
}

TEST_CASE("gradient probe passes with the shipped gradients") {
  ChannelInstance inst = gen_instance(8, 5, 68);
  std::vector<Order> orders = {Order(0.5), Order(1.0), Order(2.0)};
  ProbeReport r = gradient_probe(inst, orders, 68, 32);
  CHECK(r.pass);
  CHECK(r.samples == 32);
}

TEST_CASE("gradient probe catches a sign-flipped gradient") {
  ChannelInstance inst = gen_instance(8, 5, 69);
  std::vector<Order> orders = {Order(2.0)};
  GradientFn flipped = [](const ChannelInstance& i,
                          const Eigen::Ref<const ArrayXd>& x, Order o) {
    return ArrayXd(-grad_f_alpha(i, x, o));
  };
  ProbeReport r = gradient_probe(inst, orders, 69, 16, defaults::kGradCheckTol,
                                 flipped, nullptr);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_violation > r.threshold);
}

TEST_CASE("gradient probe with nothing to check passes vacuously") {
  ChannelInstance inst = gen_instance(4, 4, 70);
  ProbeReport r = gradient_probe(inst, {}, 70, 16);
  CHECK(r.pass);
  CHECK(r.samples == 0);
}

TEST_CASE("invariant suite: empty order list yields an empty report") {
  ChannelInstance inst = gen_instance(4, 4, 71);
  CHECK(run_invariant_suite(inst, {}, 71).empty());
}

TEST_CASE("invariant suite: every probe passes on a random instance") {
  ChannelInstance inst = gen_instance(16, 6, 72);
  std::vector<Order> orders = {Order(0.5), Order(1.0), Order(2.0)};
  std::vector<ProbeReport> reports = run_invariant_suite(inst, orders, 72,
                                                         quick_config());
  CHECK(reports.size() == 25);
  CHECK(reports.front().name == "geometry/exp-log-inversion");
  CHECK(reports.back().name == "solver/boundary-decay");
  for (const ProbeReport& r : reports) {
    INFO(r.name, " worst=", r.worst_violation, " threshold=", r.threshold);
    CHECK(r.pass);
    CHECK(r.pass == (r.worst_violation <= r.threshold));
  }
}

TEST_CASE("invariant suite: deterministic given instance and seed") {
  ChannelInstance inst = gen_instance(8, 5, 73);
  std::vector<Order> orders = {Order(0.5), Order(2.0)};
  SuiteConfig config = quick_config();
  std::vector<ProbeReport> a = run_invariant_suite(inst, orders, 73, config);
  std::vector<ProbeReport> b = run_invariant_suite(inst, orders, 73, config);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].name == b[k].name);
    CHECK(a[k].worst_violation == b[k].worst_violation);
  }
}

TEST_CASE("invariant suite: cross-solver probe needs an order below one") {
  ChannelInstance inst = gen_instance(8, 5, 74);
  std::vector<ProbeReport> reports =
      run_invariant_suite(inst, {Order(2.0)}, 74, quick_config());
  for (const ProbeReport& r : reports) CHECK(r.name != "solver/fp-agreement");
}

TEST_CASE("invariant suite: vacuous symbols reroute the gradient-norm probe") {
  RowArrayXXd rows(2, 3);
  rows << 0.6, 0.4, 0, 0.3, 0.7, 0;
  ChannelInstance inst = ChannelInstance::with_uniform_weights(rows);
  std::vector<ProbeReport> reports =
      run_invariant_suite(inst, {Order(0.5)}, 75, quick_config());
  bool saw_boundary = false;
  for (const ProbeReport& r : reports) {
    CHECK(r.name != "solver/vanishing-gradient");
    CHECK(r.name != "solver/fp-agreement");
    saw_boundary |= r.name == "solver/boundary-decay";
    INFO(r.name, " worst=", r.worst_violation, " threshold=", r.threshold);
    CHECK(r.pass);
  }
  CHECK(saw_boundary);
}
