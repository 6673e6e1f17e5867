#include "augustin/bench.hpp"
#include "augustin/instance_io.hpp"
#include "augustin/trace_io.hpp"
#include "augustin/validation.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace augustin;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string trimmed(const std::string& text) {
  const size_t first = text.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const size_t last = text.find_last_not_of(" \t");
  return text.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  try {
    size_t pos = 0;
    *out = std::stod(text, &pos);
    return pos == text.size();
  } catch (...) {
    return false;
  }
}

bool parse_long(const std::string& text, long* out) {
  if (text.empty()) return false;
  try {
    size_t pos = 0;
    *out = std::stol(text, &pos);
    return pos == text.size();
  } catch (...) {
    return false;
  }
}

int status_exit(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return 0;
    case SolveStatus::max_iters:
      return 2;
    case SolveStatus::diverged:
      return 3;
  }
  return 1;
}

struct SolveArgs {
  std::string instance_path;
  std::string gen_spec;
  double alpha = 0.0;
  std::string solver = "rgd";
  int max_iters = defaults::kMaxIters;
  double tol = defaults::kGradTol;
  std::string trace_path;
  int trace_every = defaults::kTraceEvery;
  std::uint64_t seed = 0;
  bool json_out = false;
};

void print_solve_result(bool json_out, const std::string& solver, SolveStatus status,
                        long iterations, double f_value,
                        const std::optional<double>& cert, bool hit_floor) {
  if (json_out) {
    nlohmann::json j{{"solver", solver},
                     {"status", to_string(status)},
                     {"iterations", iterations},
                     {"f_value", f_value},
                     {"hit_floor", hit_floor}};
    j["certificate"] = cert ? nlohmann::json(*cert) : nlohmann::json(nullptr);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "solver: " << solver << "\n";
  std::cout << "status: " << to_string(status) << "\n";
  std::cout << "iterations: " << iterations << "\n";
  std::cout << "f_value: " << format_csv_double(f_value) << "\n";
  if (cert) std::cout << "certificate: " << format_csv_double(*cert) << "\n";
  if (hit_floor) std::cout << "hit_floor: true\n";
}

int run_solve(const SolveArgs& args) {
  if (args.instance_path.empty() == args.gen_spec.empty()) {
    std::cerr << "error: provide exactly one of --instance or --gen\n";
    return 1;
  }
  std::optional<ChannelInstance> instance;
  if (!args.instance_path.empty()) {
    instance = load_instance(args.instance_path).instance;
  } else {
    const std::vector<std::string> parts = split_csv(args.gen_spec);
    long m = 0, n = 0;
    if (parts.size() != 2 || !parse_long(trimmed(parts[0]), &m) ||
        !parse_long(trimmed(parts[1]), &n) || m < 1 || n < 1) {
      std::cerr << "error: --gen expects M,N with both at least 1\n";
      return 1;
    }
    instance = gen_instance(m, n, args.seed);
  }

  const Order order(args.alpha);
  const auto start_time = std::chrono::steady_clock::now();

  if (order.is_one()) {
    // Closed form at order one: the minimizer is the weight-averaged row and
    // the value is the mutual information; no iteration happens.
    const Order1Solution sol = order1_solution(*instance);
    const auto wall = std::chrono::duration_cast<std::chrono::nanoseconds>(
                          std::chrono::steady_clock::now() - start_time)
                          .count();
    if (!args.trace_path.empty()) {
      IterationRecord rec;
      rec.t = 1;
      rec.g_value = kahan_total(sol.minimizer) + sol.mutual_information;
      rec.f_bar_value = sol.mutual_information;
      rec.rgrad_norm = 0.0;
      rec.min_coord = sol.minimizer.minCoeff();
      rec.bound_term = 0.0;
      rec.wall_ns = wall;
      write_trace(args.trace_path, {rec});
    }
    print_solve_result(args.json_out, "closed-form", SolveStatus::converged, 0,
                       sol.mutual_information, 0.0, false);
    return 0;
  }

  SolverConfig cfg(order);
  cfg.max_iters = args.max_iters;
  cfg.grad_tol = args.tol;
  cfg.trace_every = args.trace_every;
  const SolveResult result = args.solver == "rgd" ? rgd_solve(*instance, cfg)
                                                  : fixed_point_solve(*instance, cfg);
  if (!args.trace_path.empty()) write_trace(args.trace_path, result.trace);
  print_solve_result(args.json_out, args.solver, result.status, result.iterations,
                     result.f_value, result.certificate, result.hit_floor);
  return status_exit(result.status);
}

int run_gen(long m, long n, std::uint64_t seed, const std::string& out_path) {
  const ChannelInstance instance = gen_instance(m, n, seed);
  const std::map<std::string, std::string> metadata{
      {"generator", "uniform simplex rows via normalized i.i.d. exponentials"},
      {"prng", "mt19937_64; doubles from ((draw >> 11) + 1) * 2^-53"},
      {"seed", std::to_string(seed)},
      {"m", std::to_string(m)},
      {"n", std::to_string(n)},
  };
  save_instance(out_path, instance, metadata);
  return 0;
}

int run_bench_cmd(const BenchConfig& config) {
  const std::vector<BenchRun> runs = run_bench(config);
  std::cout << "solver,iterations,f_bar,status,wall_ns\n";
  for (const BenchRun& run : runs) {
    std::cout << run.solver << "," << run.iterations << ","
              << format_csv_double(run.f_bar) << "," << to_string(run.status) << ","
              << run.wall_ns << "\n";
  }
  return 0;
}

std::string reports_to_json(const std::vector<ProbeReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ProbeReport& r : reports)
    arr.push_back({{"name", r.name},
                   {"samples", r.samples},
                   {"worst_violation", r.worst_violation},
                   {"threshold", r.threshold},
                   {"pass", r.pass}});
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<ProbeReport>& reports) {
  std::string out = "name,samples,worst_violation,threshold,pass\n";
  for (const ProbeReport& r : reports) {
    out += r.name + "," + std::to_string(r.samples) + "," +
           format_csv_double(r.worst_violation) + "," +
           format_csv_double(r.threshold) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

int run_check(long m, long n, std::uint64_t seed, const std::string& alphas_text,
              const std::string& report_path) {
  std::vector<Order> orders;
  for (const std::string& token : split_csv(alphas_text)) {
    double a = 0.0;
    if (!parse_double(trimmed(token), &a)) {
      std::cerr << "error: --alphas entry '" << token << "' is not a number\n";
      return 1;
    }
    orders.emplace_back(a);  // rejects alpha <= 0
  }

  const ChannelInstance instance = gen_instance(m, n, seed);
  const std::vector<ProbeReport> reports = run_invariant_suite(instance, orders, seed);

  bool all_pass = true;
  long passed = 0;
  for (const ProbeReport& r : reports) {
    all_pass = all_pass && r.pass;
    passed += r.pass ? 1 : 0;
    std::printf("%s  %-28s samples=%-8ld worst=%-13.5g threshold=%g\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.samples,
                r.worst_violation, r.threshold);
  }
  std::printf("%ld/%zu probes passed\n", passed, reports.size());

  if (!report_path.empty()) {
    const std::filesystem::path path(report_path);
    const std::string body =
        path.extension() == ".csv" ? reports_to_csv(reports) : reports_to_json(reports);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open " << report_path << " for writing\n";
      return 1;
    }
    out << body;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-alpha Augustin information: solvers, instances, checks"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Minimize the objective on one instance");
  solve->add_option("--alpha", solve_args.alpha, "Order alpha > 0")->required();
  solve->add_option("--instance", solve_args.instance_path, "Instance JSON file");
  solve->add_option("--gen", solve_args.gen_spec, "Generate an instance instead: M,N");
  solve->add_option("--seed", solve_args.seed, "PRNG seed for --gen");
  solve->add_option("--solver", solve_args.solver, "rgd or fixed-point")
      ->check(CLI::IsMember({"rgd", "fixed-point"}));
  solve->add_option("--max-iters", solve_args.max_iters, "Iteration budget");
  solve->add_option("--tol", solve_args.tol, "Stopping tolerance on the gradient norm");
  solve->add_option("--trace", solve_args.trace_path, "Write per-iteration CSV here");
  solve->add_option("--trace-every", solve_args.trace_every, "Record every k-th iterate");
  solve->add_flag("--json", solve_args.json_out, "Machine-readable result on stdout");

  long gen_m = 1 << 14, gen_n = 1 << 4;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("--m", gen_m, "Number of rows");
  gen->add_option("--n", gen_n, "Alphabet size");
  gen->add_option("--seed", gen_seed, "PRNG seed");
  gen->add_option("--out", gen_out, "Output path")->required();

  BenchConfig bench_config;
  std::string bench_solvers = "rgd,fixed-point";
  std::string bench_out;
  CLI::App* bench = app.add_subcommand("bench", "Run solvers side by side on one instance");
  bench->add_option("--alpha", bench_config.alpha, "Order alpha > 0");
  bench->add_option("--m", bench_config.m, "Number of rows");
  bench->add_option("--n", bench_config.n, "Alphabet size");
  bench->add_option("--seed", bench_config.seed, "PRNG seed");
  bench->add_option("--solvers", bench_solvers, "Comma list: rgd,fixed-point");
  bench->add_option("--max-iters", bench_config.max_iters, "Iteration budget");
  bench->add_option("--out", bench_out, "Output directory")->required();

  long check_m = 64, check_n = 8;
  std::uint64_t check_seed = 42;
  std::string check_alphas = "0.3,0.5,0.999,1.001,2,3";
  std::string check_report;
  CLI::App* check = app.add_subcommand("check", "Run the invariant suite");
  check->add_option("--alphas", check_alphas, "Comma list of orders");
  check->add_option("--m", check_m, "Rows of the generated test instance");
  check->add_option("--n", check_n, "Alphabet size of the generated test instance");
  check->add_option("--seed", check_seed, "PRNG seed");
  check->add_option("--report", check_report, "Write reports here (.csv or .json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*gen) {
      if (gen_m < 1 || gen_n < 1) {
        std::cerr << "error: --m and --n must be at least 1\n";
        return 1;
      }
      return run_gen(gen_m, gen_n, gen_seed, gen_out);
    }
    if (*bench) {
      bench_config.solvers = split_csv(bench_solvers);
      bench_config.out_dir = bench_out;
      return run_bench_cmd(bench_config);
    }
    if (*check) {
      if (check_m < 1 || check_n < 1) {
        std::cerr << "error: --m and --n must be at least 1\n";
        return 1;
      }
      return run_check(check_m, check_n, check_seed, check_alphas, check_report);
    }
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
