#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "axelrod_lab/event.hpp"

namespace axelrod::io {

enum class Format { csv, jsonl };

Format parse_format(const std::string& name);
const char* to_string(Format format) noexcept;

/// Fixed-precision rendering shared by the table files ("%.10g").
/// The event log uses 17 digits so that event times stay distinct.
std::string format_real(double value, int digits = 10);

using Field = std::variant<std::int64_t, std::uint64_t, double, std::string, bool>;

/// Row-oriented table file. CSV files start with a "# config: {...}" line
/// and a fixed header; JSONL files start with a {"config": {...}} record and
/// then hold one object per row keyed by column name.
class TableWriter {
 public:
  TableWriter(const std::string& path, Format format, std::vector<std::string> columns,
              const nlohmann::ordered_json& config);

  void row(const std::vector<Field>& fields);

 private:
  std::ofstream out_;
  Format format_;
  std::vector<std::string> columns_;
  std::string path_;
};

/// Line-delimited JSON event sink with fields t, x, i, B, U, active.
/// x is the zero-based target site; i is the one-based feature.
class EventLog {
 public:
  EventLog(const std::string& path, const nlohmann::ordered_json& config);
  void write(const EventRecord& ev);

 private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace axelrod::io
