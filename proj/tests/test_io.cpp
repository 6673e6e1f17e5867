#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "augustin/bench.hpp"
#include "augustin/instance_io.hpp"
#include "augustin/trace_io.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace augustin;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Drops the final comma-separated field of every line; used to compare CSVs
// while ignoring the wall-clock column.
std::string strip_last_field(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    out << (pos == std::string::npos ? line : line.substr(0, pos)) << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("minimal instance file parses") {
  LoadedInstance loaded = parse_instance_text(
      R"({"schema_version": 1, "weights": [1.0], "rows": [[1.0]]})");
  CHECK(loaded.instance.input_count() == 1);
  CHECK(loaded.instance.alphabet_size() == 1);
  CHECK(loaded.instance.rows()(0, 0) == 1.0);
  CHECK(loaded.metadata.empty());
}

TEST_CASE("near-unit sums are accepted and made exact") {
  LoadedInstance loaded = parse_instance_text(
      R"({"schema_version": 1, "weights": [1.0],
          "rows": [[0.5, 0.5000000002]]})");
  ArrayXd row = loaded.instance.row(0);
  CHECK(kahan_total(row) == 1.0);
}

TEST_CASE("sums outside tolerance are rejected with the offending row") {
  try {
    parse_instance_text(
        R"({"schema_version": 1, "weights": [1.0], "rows": [[0.5, 0.4]]})");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::sum_deviation);
    CHECK(e.row() == 0);
  }
  try {
    parse_instance_text(
        R"({"schema_version": 1, "weights": [0.6, 0.6],
            "rows": [[1.0], [1.0]]})");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::sum_deviation);
    CHECK(e.row() == -1);
  }
}

TEST_CASE("each malformation is reported as its own kind") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_instance_text(text);
    } catch (const parse_error& e) {
      return e.kind();
    }
    FAIL("expected parse_error");
    return parse_error::Kind::io;
  };

  CHECK(kind_of("not json at all {") == parse_error::Kind::json);
  CHECK(kind_of(R"([1, 2, 3])") == parse_error::Kind::schema);
  CHECK(kind_of(R"({"weights": [1.0], "rows": [[1.0]]})") ==
        parse_error::Kind::schema);
  CHECK(kind_of(R"({"schema_version": 2, "weights": [1.0], "rows": [[1.0]]})") ==
        parse_error::Kind::schema);
  CHECK(kind_of(R"({"schema_version": 1, "weights": "x", "rows": [[1.0]]})") ==
        parse_error::Kind::schema);
  CHECK(kind_of(R"({"schema_version": 1, "weights": [1.0], "rows": [[1.0], [1.0]]})") ==
        parse_error::Kind::schema);

  try {
    parse_instance_text(
        R"({"schema_version": 1, "weights": [1.0], "rows": [[0.5, "x"]]})");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::malformed_number);
    CHECK(e.row() == 0);
    CHECK(e.column() == 1);
  }

  try {
    parse_instance_text(
        R"({"schema_version": 1, "weights": [1.5, -0.5], "rows": [[1.0], [1.0]]})");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::negative_entry);
    CHECK(e.row() == -1);
    CHECK(e.column() == 1);
  }

  try {
    parse_instance_text(
        R"({"schema_version": 1, "weights": [0.5, 0.5],
            "rows": [[0.5, 0.5], [1.0]]})");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::ragged_rows);
    CHECK(e.row() == 1);
  }
}

TEST_CASE("loading a missing file is an io error") {
  try {
    load_instance("/nonexistent/augustin-nowhere.json");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.kind() == parse_error::Kind::io);
  }
}

TEST_CASE("metadata survives the round trip, values coerced to strings") {
  LoadedInstance loaded = parse_instance_text(
      R"({"schema_version": 1, "metadata": {"note": "hand built", "count": 3},
          "weights": [1.0], "rows": [[1.0]]})");
  CHECK(loaded.metadata.at("note") == "hand built");
  CHECK(loaded.metadata.at("count") == "3");

  const std::string text = instance_to_text(loaded.instance, loaded.metadata);
  LoadedInstance again = parse_instance_text(text);
  CHECK(again.metadata == loaded.metadata);
}

TEST_CASE("save/load round trip is bit identical") {
  fs::path dir = fresh_dir("augustin-io-roundtrip");
  ChannelInstance inst = gen_instance(12, 7, 99);
  save_instance(dir / "a.json", inst, {{"k", "v"}});
  LoadedInstance loaded = load_instance(dir / "a.json");
  CHECK((loaded.instance.weights() == inst.weights()).all());
  CHECK((loaded.instance.rows() == inst.rows()).all());

  // A second save of the reloaded instance reproduces the bytes exactly.
  save_instance(dir / "b.json", loaded.instance, loaded.metadata);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("canonical file layout starts with the schema version") {
  ChannelInstance inst = gen_instance(2, 2, 1);
  const std::string text = instance_to_text(inst);
  CHECK(text.rfind("{\n  \"schema_version\": 1,", 0) == 0);
  CHECK(text.back() == '\n');
}

TEST_CASE("generated instances are deterministic in the seed") {
  ChannelInstance a = gen_instance(20, 6, 123);
  ChannelInstance b = gen_instance(20, 6, 123);
  ChannelInstance c = gen_instance(20, 6, 124);
  CHECK((a.rows() == b.rows()).all());
  CHECK((a.weights() == b.weights()).all());
  CHECK((a.rows() != c.rows()).any());
}

TEST_CASE("degenerate one-letter alphabet generates unit rows") {
  ChannelInstance inst = gen_instance(5, 1, 7);
  for (Index m = 0; m < 5; ++m) CHECK(inst.rows()(m, 0) == 1.0);
  CHECK(kahan_total(inst.weights()) == 1.0);
}

TEST_CASE("generated weights are uniform with an exactly unit total") {
  ChannelInstance inst = gen_instance(48, 4, 11);
  CHECK(kahan_total(inst.weights()) == 1.0);
  for (Index m = 0; m < 48; ++m)
    CHECK(std::abs(inst.weights()(m) - 1.0 / 48.0) <= 1e-15);
}

TEST_CASE("column means match the uniform-simplex coordinate law") {
  const Index m = 1 << 14, n = 16;
  ChannelInstance inst = gen_instance(m, n, 5);
  // A uniform-simplex coordinate has mean 1/N and variance (N-1)/(N^2 (N+1)).
  const double mean = 1.0 / static_cast<double>(n);
  const double var = (n - 1.0) / (static_cast<double>(n) * n * (n + 1.0));
  const double se = std::sqrt(var / static_cast<double>(m));
  for (Index j = 0; j < n; ++j) {
    const double col_mean = inst.rows().col(j).mean();
    CHECK(std::abs(col_mean - mean) <= 3.0 * se);
  }
}

TEST_CASE("exact normalization fixes the total and keeps structural zeros") {
  ArrayXd v(3);
  v << 0.1 + 0.2, 0.3, 0.4;  // 0.1 + 0.2 != 0.3 in floating point
  exact_normalize(v);
  CHECK(kahan_total(v) == 1.0);

  ArrayXd with_zero(3);
  with_zero << 0.5, 0.0, 0.50000001;
  exact_normalize(with_zero);
  CHECK(kahan_total(with_zero) == 1.0);
  CHECK(with_zero(1) == 0.0);
}

TEST_CASE("trace doubles print at full precision with inf literals") {
  CHECK(format_csv_double(kInf) == "inf");
  CHECK(format_csv_double(-kInf) == "-inf");
  CHECK(format_csv_double(std::nan("")) == "nan");
  const double third = 1.0 / 3.0;
  CHECK(std::strtod(format_csv_double(third).c_str(), nullptr) == third);
  const double tiny = 4.9406564584124654e-324;
  CHECK(std::strtod(format_csv_double(tiny).c_str(), nullptr) == tiny);
}

TEST_CASE("trace csv round trip preserves every field") {
  std::vector<IterationRecord> trace(3);
  trace[0] = {1, 1.25, 0.25, 0.5, 0.1, kInf, 100};
  trace[1] = {5, 1.0 / 3.0, 0.2, 1e-300, 1e-12, 2.5, 2000};
  trace[2] = {9, 1.1, 0.19, 0.0, 0.25, 0.125, 3000};

  const std::string csv = trace_to_csv(trace);
  CHECK(csv.rfind(kTraceHeader, 0) == 0);

  fs::path dir = fresh_dir("augustin-io-trace");
  write_trace(dir / "t.csv", trace);
  std::vector<IterationRecord> back = read_trace(dir / "t.csv");
  REQUIRE(back.size() == trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    CHECK(back[k].t == trace[k].t);
    CHECK(back[k].g_value == trace[k].g_value);
    CHECK(back[k].f_bar_value == trace[k].f_bar_value);
    CHECK(back[k].rgrad_norm == trace[k].rgrad_norm);
    CHECK(back[k].min_coord == trace[k].min_coord);
    CHECK((back[k].bound_term == trace[k].bound_term ||
           (std::isinf(back[k].bound_term) && std::isinf(trace[k].bound_term))));
    CHECK(back[k].wall_ns == trace[k].wall_ns);
  }
}

TEST_CASE("trace reader rejects malformed files") {
  fs::path dir = fresh_dir("augustin-io-badtrace");
  auto write = [&](const char* name, const std::string& body) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
  };
  const std::string header = std::string(kTraceHeader) + "\n";

  write("header.csv", "t,g\n1,2\n");
  CHECK_THROWS_AS(read_trace(dir / "header.csv"), parse_error);
  write("fields.csv", header + "1,2,3\n");
  CHECK_THROWS_AS(read_trace(dir / "fields.csv"), parse_error);
  write("number.csv", header + "1,x,0,0,0,0,0\n");
  CHECK_THROWS_AS(read_trace(dir / "number.csv"), parse_error);
  write("order.csv", header + "2,0,0,0,0,0,0\n1,0,0,0,0,0,0\n");
  CHECK_THROWS_AS(read_trace(dir / "order.csv"), parse_error);
  CHECK_THROWS_AS(read_trace(dir / "missing.csv"), parse_error);
  write("ok.csv", header);
  CHECK(read_trace(dir / "ok.csv").empty());
}

TEST_CASE("solver traces survive the file round trip bitwise") {
  ChannelInstance inst = gen_instance(8, 4, 55);
  SolverConfig config(Order(2.0));
  config.max_iters = 100;
  config.trace_every = 7;
  SolveResult res = rgd_solve(inst, config);

  fs::path dir = fresh_dir("augustin-io-solvertrace");
  write_trace(dir / "run.csv", res.trace);
  std::vector<IterationRecord> back = read_trace(dir / "run.csv");
  REQUIRE(back.size() == res.trace.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].t == res.trace[k].t);
    CHECK(back[k].g_value == res.trace[k].g_value);
    CHECK(back[k].rgrad_norm == res.trace[k].rgrad_norm);
    CHECK(back[k].bound_term == res.trace[k].bound_term);
  }
}

TEST_CASE("bench writes traces, a summary, and a config echo") {
  fs::path dir = fresh_dir("augustin-io-bench");
  BenchConfig config;
  config.alpha = 0.5;
  config.m = 8;
  config.n = 4;
  config.seed = 3;
  config.max_iters = 500;
  config.out_dir = dir;
  std::vector<BenchRun> runs = run_bench(config);

  REQUIRE(runs.size() == 2);
  CHECK(runs[0].solver == "rgd");
  CHECK(runs[1].solver == "fixed-point");
  CHECK(runs[0].status == SolveStatus::converged);
  CHECK(runs[1].status == SolveStatus::converged);
  CHECK(std::abs(runs[0].f_bar - runs[1].f_bar) <= 1e-8);

  CHECK(fs::exists(dir / "trace_rgd.csv"));
  CHECK(fs::exists(dir / "trace_fixed-point.csv"));
  CHECK(fs::exists(dir / "run.json"));
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary.rfind("solver,iterations,f_bar,status,wall_ns", 0) == 0);

  BenchConfig bad = config;
  bad.solvers = {"gradient-descent"};
  CHECK_THROWS_AS(run_bench(bad), contract_error);
}

TEST_CASE("bench output is deterministic apart from wall time") {
  BenchConfig config;
  config.alpha = 2.0;
  config.m = 8;
  config.n = 4;
  config.seed = 9;
  config.max_iters = 300;

  fs::path dir1 = fresh_dir("augustin-io-bench1");
  config.out_dir = dir1;
  run_bench(config);
  fs::path dir2 = fresh_dir("augustin-io-bench2");
  config.out_dir = dir2;
  run_bench(config);

  for (const char* name : {"summary.csv", "trace_rgd.csv", "trace_fixed-point.csv"})
    CHECK(strip_last_field(slurp(dir1 / name)) ==
          strip_last_field(slurp(dir2 / name)));
  CHECK(slurp(dir1 / "run.json") == slurp(dir2 / "run.json"));
}
