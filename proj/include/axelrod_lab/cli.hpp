#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "axelrod_lab/engine.hpp"

namespace axelrod::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Thrown for invalid configurations; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultLength = 10'000;

struct CliConfig {
  std::string subcommand;
  std::vector<int> q;
  /// Unset means the command default (10^4 sites, one replicate; verify uses
  /// per-target defaults).
  std::optional<std::size_t> length;
  std::optional<double> t_max;
  std::optional<std::uint64_t> max_events;
  std::optional<std::size_t> replicates;

  std::size_t ring_length() const { return length.value_or(kDefaultLength); }
  std::size_t replicate_count() const { return replicates.value_or(1); }
  std::uint64_t seed = 1;
  std::string out = ".";
  /// csv or jsonl for file output; theory also accepts text (its default).
  std::string format;
  std::string target;
  /// "geometric", a positive step for a linear grid, or an explicit list "1,10,100".
  std::string snapshot_cadence = "geometric";
  std::string grid;
  std::optional<SamplingMode> sampling;
  bool event_log = false;
  bool ledgers = false;
};

/// Resolved configuration echoed into output headers. The output directory
/// is left out so that runs written to different places compare equal.
nlohmann::ordered_json to_json(const CliConfig& config);

/// Fills fields from a JSON config object (keys as the long flag names).
void apply_json(CliConfig& config, const nlohmann::json& json);

/// "2,4" -> {2, 4}.
std::vector<int> parse_int_list(const std::string& text);
/// "2..6" -> every pair in [2, 6]^2; "2:2,2:4" -> the listed pairs.
std::vector<std::pair<int, int>> parse_grid(const std::string& text);
/// Snapshot times for a run with the given horizon.
std::vector<double> snapshot_times(const std::string& cadence, std::optional<double> horizon);

int cmd_simulate(const CliConfig& config, std::ostream& out);
int cmd_verify(const CliConfig& config, std::ostream& out);
int cmd_sweep(const CliConfig& config, std::ostream& out);
int cmd_theory(const CliConfig& config, std::ostream& out);

/// Parses argv and dispatches. Never throws; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace axelrod::cli
