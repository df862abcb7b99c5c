#include "axelrod_lab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "axelrod_lab/analysis.hpp"
#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/ledger.hpp"
#include "axelrod_lab/output.hpp"
#include "axelrod_lab/parallel.hpp"
#include "axelrod_lab/theory.hpp"
#include "axelrod_lab/verify.hpp"

namespace axelrod::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

std::filesystem::path output_dir(const CliConfig& config) {
  std::filesystem::path dir(config.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + config.out + "': " + ec.message());
  return dir;
}

io::Format file_format(const CliConfig& config) {
  if (config.format.empty()) return io::Format::csv;
  try {
    return io::parse_format(config.format);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
}

std::string table_name(const std::string& stem, io::Format format) {
  return stem + (format == io::Format::csv ? ".csv" : ".jsonl");
}

ModelParams model_params(const CliConfig& config) {
  if (config.q.empty()) throw UsageError("--q is required (comma-separated opinion counts)");
  ModelParams p;
  p.opinions = config.q;
  p.length = config.ring_length();
  p.seed = config.seed;
  try {
    p.validate();
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  return p;
}

class LogObserver final : public Observer {
 public:
  explicit LogObserver(io::EventLog& log) : log_(log) {}
  bool wants_inactive() const override { return true; }
  void on_event(const EventContext& ctx) override { log_.write(ctx.event); }

 private:
  io::EventLog& log_;
};

class CollisionSink final : public Observer {
 public:
  CollisionSink(std::vector<CollisionRecord>& records, BlockadeTracker& tracker)
      : records_(records), tracker_(tracker) {}
  void on_event(const EventContext& ctx) override {
    if (!ctx.collision) return;
    records_.push_back(*ctx.collision);
    tracker_.record(*ctx.collision);
  }

 private:
  std::vector<CollisionRecord>& records_;
  BlockadeTracker& tracker_;
};

struct ReplicateResult {
  std::uint64_t seed = 0;
  RunSummary summary;
  std::vector<DensitySnapshot> densities;
  double window_value = 0.0;
  std::size_t blockades = 0;
  std::vector<CollisionRecord> collisions;
  std::optional<WeightLedger> ledger;
};

}  // namespace

nlohmann::ordered_json to_json(const CliConfig& c) {
  nlohmann::ordered_json j;
  j["program"] = "axelrod-lab";
  j["version"] = kVersion;
  j["subcommand"] = c.subcommand;
  j["q"] = c.q;
  j["length"] = c.ring_length();
  j["t_max"] = c.t_max ? nlohmann::ordered_json(*c.t_max) : nlohmann::ordered_json(nullptr);
  j["max_events"] = c.max_events ? nlohmann::ordered_json(*c.max_events) : nlohmann::ordered_json(nullptr);
  j["replicates"] = c.replicate_count();
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["snapshot_cadence"] = c.snapshot_cadence;
  j["grid"] = c.grid;
  j["sampling"] = to_string(c.sampling.value_or(SamplingMode::active_only));
  j["event_log"] = c.event_log;
  j["ledgers"] = c.ledgers;
  if (!c.target.empty()) j["target"] = c.target;
  return j;
}

void apply_json(CliConfig& c, const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "q") {
      c.q = value.is_string() ? parse_int_list(value.get<std::string>()) : value.get<std::vector<int>>();
    } else if (key == "length") {
      c.length = value.get<std::size_t>();
    } else if (key == "t-max" || key == "t_max") {
      c.t_max = value.get<double>();
    } else if (key == "max-events" || key == "max_events") {
      c.max_events = value.get<std::uint64_t>();
    } else if (key == "replicates") {
      c.replicates = value.get<std::size_t>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      c.out = value.get<std::string>();
    } else if (key == "format") {
      c.format = value.get<std::string>();
    } else if (key == "snapshot-cadence" || key == "snapshot_cadence") {
      c.snapshot_cadence = value.is_string() ? value.get<std::string>() : std::to_string(value.get<double>());
    } else if (key == "grid") {
      c.grid = value.get<std::string>();
    } else if (key == "sampling") {
      c.sampling = parse_sampling_mode(value.get<std::string>());
    } else if (key == "event-log" || key == "event_log") {
      c.event_log = value.get<bool>();
    } else if (key == "ledgers") {
      c.ledgers = value.get<bool>();
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not an integer list: '" + text + "'");
    }
    if (used != item.size()) throw UsageError("not an integer list: '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty integer list");
  return values;
}

std::vector<std::pair<int, int>> parse_grid(const std::string& text) {
  if (text.empty()) throw UsageError("empty grid");
  std::vector<std::pair<int, int>> pairs;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int_list(text.substr(0, dots)).at(0);
    const int hi = parse_int_list(text.substr(dots + 2)).at(0);
    if (lo > hi) throw UsageError("grid range '" + text + "' is empty");
    for (int a = lo; a <= hi; ++a) {
      for (int b = lo; b <= hi; ++b) pairs.emplace_back(a, b);
    }
    return pairs;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("grid entries look like q1:q2, got '" + item + "'");
    pairs.emplace_back(parse_int_list(item.substr(0, colon)).at(0),
                       parse_int_list(item.substr(colon + 1)).at(0));
  }
  if (pairs.empty()) throw UsageError("empty grid");
  return pairs;
}

std::vector<double> snapshot_times(const std::string& cadence, std::optional<double> horizon) {
  // Without a horizon the run stops at absorption; 2^30 covers any desk-scale run.
  const double end = horizon.value_or(std::ldexp(1.0, 30));
  if (cadence == "geometric" || cadence.empty()) return geometric_time_grid(end);
  if (cadence.find(',') != std::string::npos) {
    std::vector<double> times;
    std::stringstream ss(cadence);
    std::string item;
    while (std::getline(ss, item, ',')) times.push_back(std::stod(item));
    for (std::size_t k = 1; k < times.size(); ++k) {
      if (!(times[k - 1] < times[k])) throw UsageError("snapshot times must increase");
    }
    return times;
  }
  double step = 0.0;
  try {
    step = std::stod(cadence);
  } catch (const std::exception&) {
    throw UsageError("bad --snapshot-cadence '" + cadence + "'");
  }
  if (!(step > 0.0)) throw UsageError("--snapshot-cadence step must be positive");
  if (!horizon) throw UsageError("a linear snapshot cadence needs --t-max");
  std::vector<double> times;
  for (std::size_t k = 1; static_cast<double>(k) * step <= end; ++k) times.push_back(static_cast<double>(k) * step);
  return times;
}

int cmd_simulate(const CliConfig& config, std::ostream& out) {
  const ModelParams params = model_params(config);
  if (params.features() != 2) {
    throw UsageError("simulate writes two-feature density tables; got F = " +
                     std::to_string(params.features()) +
                     " (use the library or Python bindings for other F)");
  }
  if (config.replicate_count() == 0) throw UsageError("--replicates must be positive");
  const io::Format format = file_format(config);
  const auto dir = output_dir(config);
  const auto header = to_json(config);
  const auto times = snapshot_times(config.snapshot_cadence, config.t_max);
  const SamplingMode mode = config.sampling.value_or(SamplingMode::active_only);

  std::vector<ReplicateResult> results(config.replicate_count());
  parallel_for(config.replicate_count(), worker_count(), [&](std::size_t r) {
    ReplicateResult& res = results[r];
    res.seed = derive_seed(config.seed, r);
    SimulationOptions options;
    options.mode = mode;
    Simulation sim(params, RandomStream(res.seed), options);

    RandomStream draws(derive_seed(res.seed, 1));
    const auto y1 = sample_collision_counts(params.opinions[0], params.length, draws);
    const auto y2 = sample_collision_counts(params.opinions[1], params.length, draws);
    res.window_value = window_weight_statistic(sim.initial_spins(), y1, y2, {0, params.length});

    std::optional<io::EventLog> log;
    std::optional<LogObserver> log_observer;
    BlockadeTracker tracker(sim.initial_spins());
    CollisionSink sink(res.collisions, tracker);
    RunConfig run;
    run.t_max = config.t_max;
    run.max_events = config.max_events;
    run.stop_on_absorption = true;
    run.snapshot_times = times;
    if (config.event_log) {
      log.emplace((dir / ("events-" + std::to_string(r) + ".jsonl")).string(), header);
      log_observer.emplace(*log);
      run.observers.push_back(&*log_observer);
    }
    if (config.ledgers) run.observers.push_back(&sink);
    res.summary = sim.run(run);
    res.blockades = sim.spins().blockade_count();
    for (const auto& s : res.summary.snapshots) res.densities.push_back(density_estimates(s));
    if (config.ledgers) res.ledger = tracker.ledger();
  });

  const auto q1 = static_cast<std::int64_t>(params.opinions[0]);
  const auto q2 = static_cast<std::int64_t>(params.opinions[1]);
  io::TableWriter densities((dir / table_name("densities", format)).string(), format,
                            {"replicate", "seed", "t", "ubar1", "ubar2", "u1", "u2", "blockades"},
                            header);
  io::TableWriter regime((dir / table_name("regime", format)).string(), format,
                         {"q1", "q2", "replicate", "absorbed", "t_abs",
                          "surviving_blockade_density", "seed"},
                         header);
  io::TableWriter window((dir / table_name("window", format)).string(), format,
                         {"q1", "q2", "L", "value", "replicate"}, header);
  std::optional<io::TableWriter> collisions;
  std::optional<io::TableWriter> blockades;
  if (config.ledgers) {
    collisions.emplace((dir / table_name("collisions", format)).string(), format,
                       std::vector<std::string>{"replicate", "time", "edge", "level", "outcome"}, header);
    blockades.emplace((dir / table_name("blockades", format)).string(), format,
                      std::vector<std::string>{"replicate", "edge", "hits", "broke", "T_e"}, header);
  }

  const double length = static_cast<double>(params.length);
  for (std::size_t r = 0; r < results.size(); ++r) {
    const ReplicateResult& res = results[r];
    const auto rep = static_cast<std::uint64_t>(r);
    for (const auto& d : res.densities) {
      densities.row({rep, res.seed, d.time, d.ubar(0), d.ubar(1), d.u_active(0), d.u_active(1),
                     d.blockade_density()});
    }
    const double surviving = static_cast<double>(res.blockades) / length;
    const double t_abs = res.summary.absorption_time.value_or(res.summary.final_time);
    regime.row({q1, q2, rep, res.summary.absorbed, t_abs, surviving, res.seed});
    window.row({q1, q2, static_cast<std::uint64_t>(params.length), res.window_value, rep});
    if (config.ledgers) {
      for (const auto& c : res.collisions) {
        collisions->row({rep, c.time, static_cast<std::uint64_t>(c.edge),
                         static_cast<std::int64_t>(c.level + 1), std::string(to_string(c.outcome))});
      }
      for (const auto& b : res.ledger->blockades) {
        blockades->row({rep, static_cast<std::uint64_t>(b.edge), b.hits, b.broke,
                        b.broke ? io::Field(b.break_time) : io::Field(std::string())});
      }
    }
    out << "replicate " << r << ": " << (res.summary.absorbed ? "absorbed" : "not absorbed")
        << " at t = " << io::format_real(t_abs) << ", events = " << res.summary.events
        << ", active = " << res.summary.active_events
        << ", surviving blockade density = " << io::format_real(surviving) << '\n';
  }
  out << "wrote " << table_name("densities", format) << ", " << table_name("regime", format)
      << ", " << table_name("window", format) << " to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_verify(const CliConfig& config, std::ostream& out) {
  const auto& targets = verification_targets();
  if (std::find(targets.begin(), targets.end(), config.target) == targets.end()) {
    std::string known;
    for (const auto& t : targets) known += (known.empty() ? "" : ", ") + t;
    throw UsageError("unknown verification target '" + config.target + "' (known: " + known + ")");
  }
  VerifyOptions options;
  options.q = config.q;
  options.seed = config.seed;
  options.workers = worker_count();
  options.t_max = config.t_max;
  options.max_events = config.max_events;
  options.length = config.length;
  options.replicates = config.replicates;
  if (config.snapshot_cadence != "geometric") {
    options.snapshot_times = snapshot_times(config.snapshot_cadence, config.t_max);
  }
  VerificationReport report;
  try {
    report = verify(config.target, options);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const UnsupportedConfiguration& e) {
    throw UsageError(e.what());
  }
  out << "verify " << report.target << '\n';
  for (const auto& note : report.notes) out << "  note: " << note << '\n';
  for (const auto& c : report.checks) {
    out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.label
        << ": estimate = " << io::format_real(c.estimate)
        << ", target = " << io::format_real(c.target)
        << ", bound = " << io::format_real(c.bound) << ", n = " << c.n << '\n';
  }
  const bool ok = report.passed();
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_sweep(const CliConfig& config, std::ostream& out) {
  const auto pairs = parse_grid(config.grid);
  if (config.replicate_count() == 0) throw UsageError("--replicates must be positive");
  for (const auto& [a, b] : pairs) {
    if (a < 2 || b < 2) throw UsageError("opinion counts in the grid must be at least 2");
  }
  const io::Format format = file_format(config);
  const auto dir = output_dir(config);
  const auto header = to_json(config);

  RegimeConfig rc;
  rc.pairs = pairs;
  rc.length = config.ring_length();
  rc.replicates = config.replicate_count();
  rc.seed = config.seed;
  rc.t_max = config.t_max;
  rc.max_events = config.max_events;
  rc.mode = config.sampling.value_or(SamplingMode::active_only);
  rc.workers = worker_count();
  if (rc.length < 3) throw UsageError("--length must be at least 3");
  const auto reports = regime_experiment(rc);

  io::TableWriter rows((dir / table_name("regime", format)).string(), format,
                       {"q1", "q2", "replicate", "absorbed", "t_abs", "surviving_blockade_density",
                        "seed"},
                       header);
  io::TableWriter aggregate((dir / table_name("aggregate", format)).string(), format,
                            {"q1", "q2", "replicates", "absorbed", "mean_blockade_density",
                             "ci95_low", "ci95_high", "mean_t_abs", "mean_flips_per_site",
                             "predicted", "observed"},
                            header);
  out << std::left << std::setw(4) << "q1" << std::setw(4) << "q2" << std::setw(10) << "absorbed"
      << std::setw(32) << "blockade density (95% CI)" << std::setw(16) << "predicted"
      << "observed\n";
  for (const auto& rep : reports) {
    const auto q1 = static_cast<std::int64_t>(rep.q1);
    const auto q2 = static_cast<std::int64_t>(rep.q2);
    for (const auto& row : rep.replicates) {
      rows.row({q1, q2, static_cast<std::uint64_t>(row.replicate), row.absorbed,
                row.absorption_time, row.surviving_blockade_density, row.seed});
    }
    const auto ci = rep.blockade_ci95();
    std::string observed = "inconclusive";
    if (rep.blockade_density.count() > 0) {
      if (ci.high < kClusteredBlockadeDensity) observed = "clustered";
      else if (ci.low > kClusteredBlockadeDensity) observed = "frozen";
    }
    const char* predicted = theory::to_string(theory::predict_regime(rep.q1, rep.q2));
    aggregate.row({q1, q2, static_cast<std::uint64_t>(rep.replicates.size()),
                   static_cast<std::uint64_t>(rep.absorbed_count()), rep.blockade_density.mean(),
                   ci.low, ci.high, rep.absorption_time.mean(), rep.flips_per_site.mean(),
                   std::string(predicted), observed});
    std::ostringstream density;
    density << io::format_real(rep.blockade_density.mean(), 4) << " [" << io::format_real(ci.low, 4)
            << ", " << io::format_real(ci.high, 4) << "]";
    out << std::setw(4) << rep.q1 << std::setw(4) << rep.q2 << std::setw(10)
        << (std::to_string(rep.absorbed_count()) + "/" + std::to_string(rep.replicates.size()))
        << std::setw(32) << density.str() << std::setw(16) << predicted << observed << '\n';
  }
  return kExitOk;
}

int cmd_theory(const CliConfig& config, std::ostream& out) {
  std::vector<std::pair<int, int>> pairs;
  if (!config.grid.empty()) {
    pairs = parse_grid(config.grid);
  } else {
    if (config.q.size() != 2) throw UsageError("theory needs --q q1,q2 or --grid");
    pairs.emplace_back(config.q[0], config.q[1]);
  }
  for (const auto& [a, b] : pairs) {
    if (a < 2 || b < 2) throw UsageError("opinion counts must be at least 2");
  }
  const std::string format = config.format.empty() ? "text" : config.format;
  if (format != "text" && format != "csv" && format != "jsonl") {
    throw UsageError("theory --format must be text, csv or jsonl");
  }
  using theory::to_decimal;
  using theory::to_fraction;
  const std::vector<std::string> columns = {"q1", "q2", "p0", "p1", "p2", "p11", "p12",
                                            "EY1", "EY2", "h1", "h1_decimal", "h2",
                                            "h2_decimal", "regime"};
  if (format == "csv") {
    for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
    out << '\n';
  }
  for (const auto& [q1, q2] : pairs) {
    const theory::TheoryReport r = theory::report(q1, q2);
    const std::vector<std::string> cells = {
        std::to_string(q1), std::to_string(q2), to_fraction(r.probs.p0), to_fraction(r.probs.p1),
        to_fraction(r.probs.p2), to_fraction(r.probs.p11), to_fraction(r.probs.p12),
        to_fraction(r.ey1), to_fraction(r.ey2), to_fraction(r.h1), to_decimal(r.h1),
        to_fraction(r.h2), to_decimal(r.h2), theory::to_string(r.predicted_regime)};
    if (format == "csv") {
      for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
      out << '\n';
    } else if (format == "jsonl") {
      nlohmann::ordered_json obj;
      for (std::size_t k = 0; k < cells.size(); ++k) obj[columns[k]] = cells[k];
      obj["q1"] = q1;
      obj["q2"] = q2;
      out << obj.dump() << '\n';
    } else {
      out << "q = (" << q1 << ", " << q2 << ")\n"
          << "  p0 = " << cells[2] << ", p1 = " << cells[3] << ", p2 = " << cells[4] << '\n'
          << "  p11 = " << cells[5] << ", p12 = " << cells[6] << ", E[Y1] = " << cells[7]
          << ", E[Y2] = " << cells[8] << '\n'
          << "  h1 = " << cells[9] << " (" << cells[10] << ")\n"
          << "  h2 = " << cells[11] << " (" << cells[12] << ")\n"
          << "  regime: " << cells[13] << " - " << theory::regime_provenance(r.predicted_regime)
          << '\n';
      if (r.fixation_condition_holds) {
        out << "  F/q < (1 - 1/q)^(F-1) at F = 2: " << (*r.fixation_condition_holds ? "yes" : "no")
            << '\n';
      }
    }
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Event-driven simulator and verifier for the Axelrod model with a variable "
               "number of opinions per feature",
               "axelrod-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // Raw flag values; applied on top of the JSON config after parsing.
  std::string config_path, q_text, t_max_text, sampling_text;
  CliConfig flags;
  std::uint64_t max_events = 0;
  std::size_t flag_length = kDefaultLength;
  std::size_t flag_replicates = 1;
  double t_max = 0.0;
  std::map<std::string, CLI::Option*> given;

  auto add_flags = [&](CLI::App* sub, std::initializer_list<const char*> names) {
    given[std::string(sub->get_name()) + "--config"] =
        sub->add_option("--config", config_path, "JSON config file; flags override it");
    for (const std::string name : names) {
      CLI::Option* opt = nullptr;
      if (name == "q") opt = sub->add_option("--q", q_text, "Opinion counts per feature, e.g. 2,4");
      if (name == "length") opt = sub->add_option("--length", flag_length, "Ring length L");
      if (name == "t-max") opt = sub->add_option("--t-max", t_max, "Stop at this time");
      if (name == "max-events") opt = sub->add_option("--max-events", max_events, "Stop after this many events");
      if (name == "replicates") opt = sub->add_option("--replicates", flag_replicates, "Independent replicates");
      if (name == "seed") opt = sub->add_option("--seed", flags.seed, "Base seed");
      if (name == "out") opt = sub->add_option("--out", flags.out, "Output directory");
      if (name == "format") opt = sub->add_option("--format", flags.format, "csv or jsonl (theory: text, csv, jsonl)");
      if (name == "snapshot-cadence") {
        opt = sub->add_option("--snapshot-cadence", flags.snapshot_cadence,
                              "geometric, a time step, or a list like 1,10,100");
      }
      if (name == "grid") opt = sub->add_option("--grid", flags.grid, "Pairs: 2..6 or 2:2,2:4");
      if (name == "sampling") {
        opt = sub->add_option("--sampling", sampling_text, "active-only (default) or all-arrivals");
      }
      if (name == "event-log") opt = sub->add_flag("--event-log", flags.event_log, "Write events-<r>.jsonl");
      if (name == "ledgers") opt = sub->add_flag("--ledgers", flags.ledgers, "Write collision and blockade ledgers");
      given[std::string(sub->get_name()) + name] = opt;
    }
  };

  auto* simulate = app.add_subcommand("simulate", "Run replicates and write density/regime tables");
  add_flags(simulate, {"q", "length", "t-max", "max-events", "replicates", "seed", "out", "format",
                       "snapshot-cadence", "sampling", "event-log", "ledgers"});
  auto* verify_cmd = app.add_subcommand("verify", "Check one lemma or invariant statistically");
  verify_cmd->add_option("target", flags.target, "lemma1, lemma4, lemma5, lemma6, lemma7-window, "
                                                 "init-frequencies, coupling, parity, ancestors")
      ->required();
  add_flags(verify_cmd, {"q", "length", "t-max", "max-events", "replicates", "seed",
                         "snapshot-cadence"});
  auto* sweep = app.add_subcommand("sweep", "Regime experiment over a grid of (q1, q2)");
  add_flags(sweep, {"grid", "length", "t-max", "max-events", "replicates", "seed", "out", "format",
                    "sampling"});
  auto* theory_cmd = app.add_subcommand("theory", "Exact closed forms for (q1, q2)");
  add_flags(theory_cmd, {"q", "grid", "format"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  auto was_given = [&](const std::string& flag) {
    const auto it = given.find(name + flag);
    return it != given.end() && it->second != nullptr && it->second->count() > 0;
  };

  try {
    CliConfig config;
    config.subcommand = name;
    config.target = flags.target;
    if (was_given("--config")) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot read config file '" + config_path + "'");
      nlohmann::json json;
      try {
        in >> json;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config file: ") + e.what());
      }
      try {
        apply_json(config, json);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
      }
    }
    if (was_given("q")) config.q = parse_int_list(q_text);
    if (was_given("length")) config.length = flag_length;
    if (was_given("t-max")) config.t_max = t_max;
    if (was_given("max-events")) config.max_events = max_events;
    if (was_given("replicates")) config.replicates = flag_replicates;
    if (was_given("seed")) config.seed = flags.seed;
    if (was_given("out")) config.out = flags.out;
    if (was_given("format")) config.format = flags.format;
    if (was_given("snapshot-cadence")) config.snapshot_cadence = flags.snapshot_cadence;
    if (was_given("grid")) config.grid = flags.grid;
    if (was_given("sampling")) {
      try {
        config.sampling = parse_sampling_mode(sampling_text);
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
    }
    if (was_given("event-log")) config.event_log = flags.event_log;
    if (was_given("ledgers")) config.ledgers = flags.ledgers;
    if (config.t_max && !(*config.t_max > 0.0)) throw UsageError("--t-max must be positive");
    if (config.max_events && *config.max_events == 0) throw UsageError("--max-events must be positive");

    if (name == "simulate") return cmd_simulate(config, out);
    if (name == "verify") return cmd_verify(config, out);
    if (name == "sweep") return cmd_sweep(config, out);
    return cmd_theory(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace axelrod::cli
