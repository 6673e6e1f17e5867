#include "augustin/trace_io.hpp"

#include "augustin/instance_io.hpp"  // parse_error

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace augustin {

std::string format_csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trace_to_csv(const std::vector<IterationRecord>& trace) {
  std::string out = kTraceHeader;
  out += "\n";
  for (const IterationRecord& rec : trace) {
    out += std::to_string(rec.t);
    out += ",";
    out += format_csv_double(rec.g_value);
    out += ",";
    out += format_csv_double(rec.f_bar_value);
    out += ",";
    out += format_csv_double(rec.rgrad_norm);
    out += ",";
    out += format_csv_double(rec.min_coord);
    out += ",";
    out += format_csv_double(rec.bound_term);
    out += ",";
    out += std::to_string(rec.wall_ns);
    out += "\n";
  }
  return out;
}

void write_trace(const std::filesystem::path& path,
                 const std::vector<IterationRecord>& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw parse_error(parse_error::Kind::io,
                      "trace: cannot open " + path.string() + " for writing");
  out << trace_to_csv(trace);
  if (!out)
    throw parse_error(parse_error::Kind::io, "trace: write failed on " + path.string());
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_field_double(const std::string& field, long line_no, long column) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    std::ostringstream msg;
    msg << "trace: line " << line_no << " field " << column << " is not a number";
    throw parse_error(parse_error::Kind::malformed_number, msg.str(), line_no, column);
  }
  return v;
}

long long parse_field_int(const std::string& field, long line_no, long column) {
  const char* begin = field.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0') {
    std::ostringstream msg;
    msg << "trace: line " << line_no << " field " << column << " is not an integer";
    throw parse_error(parse_error::Kind::malformed_number, msg.str(), line_no, column);
  }
  return v;
}

}  // namespace

std::vector<IterationRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw parse_error(parse_error::Kind::io,
                      "trace: cannot open " + path.string() + " for reading");

  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw parse_error(parse_error::Kind::schema, "trace: missing or wrong header", 0);

  std::vector<IterationRecord> trace;
  long line_no = 1;
  long prev_t = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 7) {
      std::ostringstream msg;
      msg << "trace: line " << line_no << " has " << fields.size()
          << " fields, expected 7";
      throw parse_error(parse_error::Kind::schema, msg.str(), line_no);
    }
    IterationRecord rec;
    rec.t = static_cast<long>(parse_field_int(fields[0], line_no, 0));
    rec.g_value = parse_field_double(fields[1], line_no, 1);
    rec.f_bar_value = parse_field_double(fields[2], line_no, 2);
    rec.rgrad_norm = parse_field_double(fields[3], line_no, 3);
    rec.min_coord = parse_field_double(fields[4], line_no, 4);
    rec.bound_term = parse_field_double(fields[5], line_no, 5);
    rec.wall_ns = parse_field_int(fields[6], line_no, 6);
    if (rec.t <= prev_t) {
      std::ostringstream msg;
      msg << "trace: line " << line_no << " iterate index " << rec.t
          << " does not increase";
      throw parse_error(parse_error::Kind::schema, msg.str(), line_no);
    }
    prev_t = rec.t;
    trace.push_back(rec);
  }
  return trace;
}

}  // namespace augustin
