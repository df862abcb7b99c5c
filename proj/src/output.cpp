#include "axelrod_lab/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include "axelrod_lab/errors.hpp"

namespace axelrod::io {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::string csv_field(const Field& f) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
  };
  return std::visit(Visitor{}, f);
}

nlohmann::ordered_json json_field(const Field& f) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    // Round-trip through the fixed-precision text so both formats agree.
    nlohmann::ordered_json operator()(double v) const {
      return std::strtod(format_real(v).c_str(), nullptr);
    }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, f);
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "jsonl") return Format::jsonl;
  throw PreconditionError("unknown output format '" + name + "' (expected csv or jsonl)");
}

const char* to_string(Format format) noexcept {
  return format == Format::csv ? "csv" : "jsonl";
}

std::string format_real(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

TableWriter::TableWriter(const std::string& path, Format format, std::vector<std::string> columns,
                         const nlohmann::ordered_json& config)
    : out_(open_or_throw(path)), format_(format), columns_(std::move(columns)), path_(path) {
  if (format_ == Format::csv) {
    out_ << "# config: " << config.dump() << '\n';
    for (std::size_t k = 0; k < columns_.size(); ++k) out_ << (k ? "," : "") << columns_[k];
    out_ << '\n';
  } else {
    out_ << nlohmann::ordered_json{{"config", config}}.dump() << '\n';
  }
}

void TableWriter::row(const std::vector<Field>& fields) {
  if (fields.size() != columns_.size()) {
    throw std::logic_error("row has " + std::to_string(fields.size()) + " fields, table " + path_ +
                           " has " + std::to_string(columns_.size()) + " columns");
  }
  if (format_ == Format::csv) {
    for (std::size_t k = 0; k < fields.size(); ++k) out_ << (k ? "," : "") << csv_field(fields[k]);
    out_ << '\n';
  } else {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < fields.size(); ++k) obj[columns_[k]] = json_field(fields[k]);
    out_ << obj.dump() << '\n';
  }
  if (!out_) throw std::runtime_error("write to '" + path_ + "' failed");
}

EventLog::EventLog(const std::string& path, const nlohmann::ordered_json& config)
    : out_(open_or_throw(path)), path_(path) {
  out_ << nlohmann::ordered_json{{"config", config}}.dump() << '\n';
}

void EventLog::write(const EventRecord& ev) {
  nlohmann::ordered_json obj;
  obj["t"] = std::strtod(format_real(ev.time, 17).c_str(), nullptr);
  obj["x"] = ev.target;
  obj["i"] = ev.feature + 1;
  obj["B"] = ev.direction;
  obj["U"] = std::strtod(format_real(ev.uniform, 17).c_str(), nullptr);
  obj["active"] = ev.active;
  out_ << obj.dump() << '\n';
  if (!out_) throw std::runtime_error("write to '" + path_ + "' failed");
}

}  // namespace axelrod::io
