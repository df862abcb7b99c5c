#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "axelrod_lab/ancestors.hpp"
#include "axelrod_lab/event.hpp"
#include "axelrod_lab/model.hpp"
#include "axelrod_lab/rng.hpp"
#include "axelrod_lab/spins.hpp"

namespace axelrod {

/// How arrows are drawn.
enum class SamplingMode {
  /// Every Poisson arrival of the L*F rate-one clocks, active or not.
  all_arrivals,
  /// Only arrows that will be active, drawn rejection-free from the live
  /// edges. Same law on the subsequence of active events; much faster once
  /// the system coarsens.
  active_only,
};

const char* to_string(SamplingMode mode) noexcept;
SamplingMode parse_sampling_mode(const std::string& name);

/// Draws the next arrow by aggregated sampling: exponential(L F) waiting
/// time, uniform (site, feature), fair direction, uniform U.
EventRecord next_event(const CultureState& state, const ModelParams& params, RandomStream& rng);

/// Copies the source opinion into the target when the event is active and
/// moves the clock. Throws ConsistencyError when `state` changed since `ev`
/// was drawn.
void apply_event(CultureState& state, const EventRecord& ev);

class Simulation;

struct EventContext {
  const EventRecord& event;
  const std::optional<CollisionRecord>& collision;
  const Simulation& simulation;
};

/// Run hook invoked after each applied event.
class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_event(const EventContext& context) = 0;
  /// Inactive arrows are delivered only when this returns true.
  virtual bool wants_inactive() const { return false; }
};

struct RunConfig {
  std::optional<double> t_max;
  std::optional<std::uint64_t> max_events;
  bool stop_on_absorption = true;
  std::vector<Observer*> observers;
  /// Times at which to store a copy of the spins (must be increasing).
  std::vector<double> snapshot_times;

  /// Throws PreconditionError when no stopping rule is present.
  void validate() const;
};

enum class StopReason { t_max, max_events, absorbed };

const char* to_string(StopReason reason) noexcept;

struct RunSummary {
  std::uint64_t events = 0;
  std::uint64_t active_events = 0;
  std::uint64_t collisions = 0;
  /// Active events per feature.
  std::vector<std::uint64_t> flips_per_level;
  double final_time = 0.0;
  bool absorbed = false;
  std::optional<double> absorption_time;
  StopReason stop_reason = StopReason::t_max;
  CultureState final_state;
  std::vector<SpinConfig> snapshots;
};

struct SimulationOptions {
  SamplingMode mode = SamplingMode::all_arrivals;
  bool track_ancestors = false;
  /// Keep every CollisionRecord in memory (see collisions()).
  bool record_collisions = false;
  /// Compare incremental spins against derive_spins after each active
  /// event. O(L F) per event; for tests and verification only.
  bool check_coupling = false;
};

/// One trajectory: culture state, coupled spins, optional ancestor table.
/// Single-threaded; independent instances may run on different threads.
class Simulation {
 public:
  Simulation(ModelParams params, RandomStream rng, SimulationOptions options = {});
  /// Starts from a given configuration instead of the product measure.
  Simulation(ModelParams params, CultureState initial, RandomStream rng,
             SimulationOptions options = {});

  const ModelParams& params() const noexcept { return params_; }
  const SimulationOptions& options() const noexcept { return options_; }
  const CultureState& state() const noexcept { return state_; }
  const CultureState& initial_state() const noexcept { return initial_; }
  const SpinConfig& spins() const noexcept { return spins_; }
  const SpinConfig& initial_spins() const noexcept { return initial_spins_; }
  /// Null unless ancestors are tracked.
  const AncestorTable* ancestors() const noexcept {
    return options_.track_ancestors ? &ancestors_ : nullptr;
  }
  std::span<const CollisionRecord> collisions() const noexcept { return collisions_; }
  /// Active events per site (both features summed).
  std::span<const std::uint64_t> flips_per_site() const noexcept { return flips_per_site_; }

  double time() const noexcept { return state_.time; }
  /// No live edge remains: every rate vanishes.
  bool absorbed() const noexcept { return spins_.live_count() == 0; }

  /// Draws and applies one event. In active-only mode returns nullopt once
  /// absorbed. Observers are not called.
  std::optional<EventRecord> step();

  RunSummary run(const RunConfig& config);

 private:
  std::optional<EventRecord> draw();
  EventRecord draw_any();
  std::optional<EventRecord> draw_active();
  std::optional<CollisionRecord> apply(const EventRecord& ev);
  void reindex(EdgeIndex e, int old_count);
  void init_indices();

  ModelParams params_;
  SimulationOptions options_;
  RandomStream rng_;
  CultureState initial_;
  CultureState state_;
  SpinConfig initial_spins_;
  SpinConfig spins_;
  AncestorTable ancestors_;
  std::vector<CollisionRecord> collisions_;
  std::vector<std::uint64_t> flips_per_site_;
  std::vector<std::uint64_t> flips_per_level_;

  // Edges bucketed by particle count, for rejection-free sampling.
  std::vector<std::vector<EdgeIndex>> buckets_;
  std::vector<std::size_t> bucket_pos_;

  std::optional<EventRecord> pending_;
  std::uint64_t events_ = 0;
  std::uint64_t active_events_ = 0;
  std::uint64_t collision_count_ = 0;
  std::optional<double> absorption_time_;
};

}  // namespace axelrod
