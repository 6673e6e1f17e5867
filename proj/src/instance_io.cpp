#include "augustin/instance_io.hpp"

#include "augustin/numerics.hpp"
#include "augustin/rng.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace augustin {

using nlohmann::json;

void exact_normalize(ArrayXd& v) {
  const double total = kahan_total(v);
  require(std::isfinite(total) && total > 0.0, "exact_normalize: sum must be positive");
  if (total != 1.0) v /= total;
  // The quotient sums to one only up to rounding; push the residual into the
  // smallest positive coordinate (never a structural zero) until the
  // compensated total is exactly 1.0. Each pass shrinks the residual by at
  // least half, so this terminates almost immediately.
  for (int pass = 0; pass < 64; ++pass) {
    const double residual = 1.0 - kahan_total(v);
    if (residual == 0.0) return;
    Index pick = -1;
    for (Index i = 0; i < v.size(); ++i) {
      if (v(i) <= 0.0) continue;
      const double moved = v(i) + residual;
      if (moved == v(i) || moved <= 0.0) continue;
      if (pick < 0 || v(i) < v(pick)) pick = i;
    }
    if (pick < 0) return;  // residual below the resolution of every coordinate
    v(pick) += residual;
  }
}

namespace {

std::string entry_label(long row, long column) {
  std::ostringstream out;
  if (row < 0)
    out << "weights[" << column << "]";
  else
    out << "rows[" << row << "][" << column << "]";
  return out.str();
}

double number_at(const json& el, long row, long column) {
  if (!el.is_number())
    throw parse_error(parse_error::Kind::malformed_number,
                      "instance: " + entry_label(row, column) + " is not a number",
                      row, column);
  const double v = el.get<double>();
  if (!std::isfinite(v))
    throw parse_error(parse_error::Kind::malformed_number,
                      "instance: " + entry_label(row, column) + " is not finite",
                      row, column);
  if (v < 0.0)
    throw parse_error(parse_error::Kind::negative_entry,
                      "instance: " + entry_label(row, column) + " is negative",
                      row, column);
  return v;
}

std::string dump_vector(const Eigen::Ref<const ArrayXd>& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr.dump();
}

}  // namespace

LoadedInstance parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(parse_error::Kind::json, std::string("instance: ") + e.what());
  }
  if (!j.is_object())
    throw parse_error(parse_error::Kind::schema, "instance: top level must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    throw parse_error(parse_error::Kind::schema,
                      "instance: schema_version must be an integer");
  if (j["schema_version"].get<long>() != 1)
    throw parse_error(parse_error::Kind::schema,
                      "instance: unsupported schema_version (expected 1)");
  if (!j.contains("weights") || !j["weights"].is_array() || j["weights"].empty())
    throw parse_error(parse_error::Kind::schema,
                      "instance: weights must be a nonempty array");
  if (!j.contains("rows") || !j["rows"].is_array() || j["rows"].empty())
    throw parse_error(parse_error::Kind::schema,
                      "instance: rows must be a nonempty array");

  const json& jw = j["weights"];
  const json& jr = j["rows"];
  if (jw.size() != jr.size())
    throw parse_error(parse_error::Kind::schema,
                      "instance: weights and rows must have the same length");

  const Index m = static_cast<Index>(jw.size());
  ArrayXd weights(m);
  for (Index r = 0; r < m; ++r) weights(r) = number_at(jw[static_cast<size_t>(r)], -1, r);

  if (!jr[0].is_array())
    throw parse_error(parse_error::Kind::schema, "instance: rows[0] must be an array", 0);
  const Index n = static_cast<Index>(jr[0].size());
  if (n < 1)
    throw parse_error(parse_error::Kind::schema,
                      "instance: rows must have at least one column", 0);

  RowArrayXXd rows(m, n);
  for (Index r = 0; r < m; ++r) {
    const json& row = jr[static_cast<size_t>(r)];
    if (!row.is_array()) {
      std::ostringstream msg;
      msg << "instance: rows[" << r << "] must be an array";
      throw parse_error(parse_error::Kind::schema, msg.str(), r);
    }
    if (static_cast<Index>(row.size()) != n) {
      std::ostringstream msg;
      msg << "instance: rows[" << r << "] has " << row.size() << " entries, expected "
          << n;
      throw parse_error(parse_error::Kind::ragged_rows, msg.str(), r);
    }
    for (Index c = 0; c < n; ++c)
      rows(r, c) = number_at(row[static_cast<size_t>(c)], r, c);
  }

  if (std::abs(kahan_total(weights) - 1.0) > defaults::kFileSumTol)
    throw parse_error(parse_error::Kind::sum_deviation,
                      "instance: weights sum deviates from one by more than 1e-9");
  for (Index r = 0; r < m; ++r) {
    ArrayXd row = rows.row(r).transpose();
    if (std::abs(kahan_total(row) - 1.0) > defaults::kFileSumTol) {
      std::ostringstream msg;
      msg << "instance: rows[" << r << "] sum deviates from one by more than 1e-9";
      throw parse_error(parse_error::Kind::sum_deviation, msg.str(), r);
    }
  }

  exact_normalize(weights);
  for (Index r = 0; r < m; ++r) {
    ArrayXd row = rows.row(r).transpose();
    exact_normalize(row);
    rows.row(r) = row.transpose();
  }

  std::map<std::string, std::string> metadata;
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object())
      throw parse_error(parse_error::Kind::schema, "instance: metadata must be an object");
    for (const auto& [key, value] : j["metadata"].items())
      metadata[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }

  return LoadedInstance{ChannelInstance(weights, rows), std::move(metadata)};
}

LoadedInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw parse_error(parse_error::Kind::io,
                      "instance: cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad())
    throw parse_error(parse_error::Kind::io, "instance: read failed on " + path.string());
  return parse_instance_text(buffer.str());
}

std::string instance_to_text(const ChannelInstance& instance,
                             const std::map<std::string, std::string>& metadata) {
  std::string out;
  out += "{\n";
  out += "  \"schema_version\": 1,\n";
  out += "  \"metadata\": " + json(metadata).dump() + ",\n";
  out += "  \"weights\": " + dump_vector(instance.weights()) + ",\n";
  out += "  \"rows\": [\n";
  const Index m = instance.input_count();
  for (Index r = 0; r < m; ++r) {
    out += "    " + dump_vector(instance.rows().row(r).transpose());
    out += (r + 1 < m) ? ",\n" : "\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

void save_instance(const std::filesystem::path& path, const ChannelInstance& instance,
                   const std::map<std::string, std::string>& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw parse_error(parse_error::Kind::io,
                      "instance: cannot open " + path.string() + " for writing");
  out << instance_to_text(instance, metadata);
  if (!out)
    throw parse_error(parse_error::Kind::io, "instance: write failed on " + path.string());
}

ChannelInstance gen_instance(Index m, Index n, std::uint64_t seed) {
  require(m >= 1 && n >= 1, "gen_instance: m and n must be at least 1");
  std::mt19937_64 rng(seed);
  RowArrayXXd rows(m, n);
  // Row-major draw order: row r consumes draws r*n .. r*n + n - 1.
  for (Index r = 0; r < m; ++r) {
    ArrayXd row = sample_simplex(rng, n);
    exact_normalize(row);
    rows.row(r) = row.transpose();
  }
  ArrayXd weights = ArrayXd::Constant(m, 1.0 / static_cast<double>(m));
  exact_normalize(weights);
  return ChannelInstance(weights, rows);
}

}  // namespace augustin
