#pragma once

#include "augustin/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

namespace augustin {

// Failure while reading an instance file. Each kind is distinct so callers
// (and tests) can tell a malformed file from a merely inconsistent one.
// row is the 0-based index into `rows` (-1 for the weights vector or for
// global problems), column the 0-based entry index (-1 when not applicable).
class parse_error : public std::runtime_error {
 public:
  enum class Kind {
    io,                // file unreadable
    json,              // text is not valid JSON
    schema,            // missing/mistyped fields or unsupported version
    malformed_number,  // entry is not a finite number
    negative_entry,
    sum_deviation,  // weights or a row fail to sum to one within tolerance
    ragged_rows,
  };

  parse_error(Kind kind, const std::string& message, long row = -1, long column = -1)
      : std::runtime_error(message), kind_(kind), row_(row), column_(column) {}

  Kind kind() const { return kind_; }
  long row() const { return row_; }
  long column() const { return column_; }

 private:
  Kind kind_;
  long row_;
  long column_;
};

struct LoadedInstance {
  ChannelInstance instance;
  std::map<std::string, std::string> metadata;
};

// Instance files are JSON: {"schema_version": 1, "metadata": {...},
// "weights": [...], "rows": [[...], ...]}. Weights and every row must sum to
// one within 1e-9; they are then renormalized so the compensated total is
// exactly 1.0, which makes save/load round trips byte-identical.
LoadedInstance parse_instance_text(const std::string& text);
LoadedInstance load_instance(const std::filesystem::path& path);

std::string instance_to_text(const ChannelInstance& instance,
                             const std::map<std::string, std::string>& metadata = {});
void save_instance(const std::filesystem::path& path, const ChannelInstance& instance,
                   const std::map<std::string, std::string>& metadata = {});

// Random instance: every row is an independent uniform draw from the
// probability simplex (exponential spacings over mt19937_64, so the result
// is bit-identical across platforms for a given seed), weights uniform.
ChannelInstance gen_instance(Index m, Index n, std::uint64_t seed);

// Scale v to unit sum, then nudge single coordinates until the compensated
// total is exactly 1.0. Exposed for tests; gen_instance and the parser use it.
void exact_normalize(ArrayXd& v);

}  // namespace augustin
