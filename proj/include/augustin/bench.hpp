#pragma once

#include "augustin/solve.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace augustin {

struct BenchConfig {
  double alpha = 3.0;
  Index m = 1 << 14;
  Index n = 1 << 4;
  std::uint64_t seed = 0;
  std::vector<std::string> solvers = {"rgd", "fixed-point"};
  int max_iters = defaults::kMaxIters;
  double grad_tol = defaults::kGradTol;
  int trace_every = defaults::kTraceEvery;
  std::filesystem::path out_dir = ".";
};

struct BenchRun {
  std::string solver;
  SolveStatus status = SolveStatus::max_iters;
  long iterations = 0;
  double f_bar = 0.0;  // objective at the normalized final iterate
  std::optional<double> certificate;
  long long wall_ns = 0;
};

// Runs every named solver ("rgd" or "fixed-point") on one generated instance
// from the shared uniform start and writes trace_<solver>.csv per solver,
// summary.csv (wall_ns last, so byte comparisons can strip the one
// nondeterministic column), and run.json (configuration echo) into out_dir.
// Unknown solver names are contract errors.
std::vector<BenchRun> run_bench(const BenchConfig& config);

}  // namespace augustin
