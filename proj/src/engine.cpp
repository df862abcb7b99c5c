#include "axelrod_lab/engine.hpp"

#include <string>
#include <utility>

#include "axelrod_lab/errors.hpp"

namespace axelrod {

const char* to_string(SamplingMode mode) noexcept {
  return mode == SamplingMode::all_arrivals ? "all-arrivals" : "active-only";
}

SamplingMode parse_sampling_mode(const std::string& name) {
  if (name == "all-arrivals") return SamplingMode::all_arrivals;
  if (name == "active-only") return SamplingMode::active_only;
  throw PreconditionError("unknown sampling mode '" + name +
                          "' (expected all-arrivals or active-only)");
}

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::t_max: return "t_max";
    case StopReason::max_events: return "max_events";
    case StopReason::absorbed: return "absorbed";
  }
  return "?";
}

void RunConfig::validate() const {
  if (!t_max && !max_events && !stop_on_absorption) {
    throw PreconditionError("run needs at least one stopping rule (t_max, max_events or absorption)");
  }
  if (t_max && !(*t_max > 0.0)) throw PreconditionError("t_max must be positive");
  if (max_events && *max_events == 0) throw PreconditionError("max_events must be positive");
  for (std::size_t k = 1; k < snapshot_times.size(); ++k) {
    if (!(snapshot_times[k - 1] < snapshot_times[k])) {
      throw PreconditionError("snapshot times must be strictly increasing");
    }
  }
}

EventRecord next_event(const CultureState& state, const ModelParams& params, RandomStream& rng) {
  const std::size_t l = state.length();
  const int f = state.features();
  EventRecord ev;
  ev.time = state.time + rng.exponential(static_cast<double>(l) * f);
  ev.target = rng.below(l);
  ev.feature = static_cast<FeatureIndex>(rng.below(static_cast<std::uint64_t>(f)));
  ev.direction = rng.coin() ? 1 : -1;
  ev.uniform = rng.uniform();
  ev.source = wrap_site(static_cast<std::ptrdiff_t>(ev.target) + ev.direction, l);
  ev.hamming_before = hamming(state, ev.target, ev.source);
  ev.active = state.opinion(ev.target, ev.feature) != state.opinion(ev.source, ev.feature) &&
              ev.uniform <= acceptance_threshold(ev.hamming_before, params.features());
  ev.state_version = state.version();
  return ev;
}

void apply_event(CultureState& state, const EventRecord& ev) {
  if (ev.state_version != state.version()) {
    throw ConsistencyError("stale event: drawn against state version " +
                           std::to_string(ev.state_version) + ", state is at " +
                           std::to_string(state.version()));
  }
  if (ev.active) state.set_opinion(ev.target, ev.feature, state.opinion(ev.source, ev.feature));
  state.time = ev.time;
}

Simulation::Simulation(ModelParams params, RandomStream rng, SimulationOptions options)
    : params_(std::move(params)), options_(options), rng_(std::move(rng)) {
  initial_ = init_state(params_, rng_);
  init_indices();
}

Simulation::Simulation(ModelParams params, CultureState initial, RandomStream rng,
                       SimulationOptions options)
    : params_(std::move(params)), options_(options), rng_(std::move(rng)),
      initial_(std::move(initial)) {
  params_.validate();
  if (initial_.length() != params_.length || initial_.features() != params_.features()) {
    throw ParameterError("initial state does not match the model parameters");
  }
  init_indices();
}

void Simulation::init_indices() {
  const std::size_t l = params_.length;
  const int f = params_.features();
  state_ = initial_;
  initial_spins_ = derive_spins(initial_);
  spins_ = initial_spins_;
  if (options_.track_ancestors) ancestors_ = AncestorTable(initial_);
  flips_per_site_.assign(l, 0);
  flips_per_level_.assign(static_cast<std::size_t>(f), 0);

  buckets_.assign(static_cast<std::size_t>(f) + 1, {});
  bucket_pos_.assign(l, 0);
  for (EdgeIndex e = 0; e < l; ++e) {
    auto& bucket = buckets_[static_cast<std::size_t>(spins_.count(e))];
    bucket_pos_[e] = bucket.size();
    bucket.push_back(e);
  }
  if (absorbed()) absorption_time_ = state_.time;
}

void Simulation::reindex(EdgeIndex e, int old_count) {
  const int now = spins_.count(e);
  if (now == old_count) return;
  auto& from = buckets_[static_cast<std::size_t>(old_count)];
  const std::size_t pos = bucket_pos_[e];
  const EdgeIndex moved = from.back();
  from[pos] = moved;
  bucket_pos_[moved] = pos;
  from.pop_back();
  auto& to = buckets_[static_cast<std::size_t>(now)];
  bucket_pos_[e] = to.size();
  to.push_back(e);
}

EventRecord Simulation::draw_any() {
  // Same draw order as next_event(); the edge count replaces the Hamming scan.
  const std::size_t l = params_.length;
  const int f = params_.features();
  EventRecord ev;
  ev.time = state_.time + rng_.exponential(static_cast<double>(l) * f);
  ev.target = rng_.below(l);
  ev.feature = static_cast<FeatureIndex>(rng_.below(static_cast<std::uint64_t>(f)));
  ev.direction = rng_.coin() ? 1 : -1;
  ev.uniform = rng_.uniform();
  ev.source = wrap_site(static_cast<std::ptrdiff_t>(ev.target) + ev.direction, l);
  const EdgeIndex e = edge_between(ev.target, ev.direction, l);
  ev.hamming_before = spins_.count(e);
  ev.active = spins_.occupied(e, ev.feature) &&
              ev.uniform <= acceptance_threshold(ev.hamming_before, f);
  ev.state_version = state_.version();
  return ev;
}

std::optional<EventRecord> Simulation::draw_active() {
  const std::size_t l = params_.length;
  const int f = params_.features();
  // An edge with j particles carries 2j arrows of rate r(j): total (F - j)/F.
  std::uint64_t total = 0;
  for (int j = 1; j < f; ++j) {
    total += buckets_[static_cast<std::size_t>(j)].size() * static_cast<std::uint64_t>(f - j);
  }
  if (total == 0) return std::nullopt;

  EventRecord ev;
  ev.time = state_.time + rng_.exponential(static_cast<double>(total) / f);
  std::uint64_t u = rng_.below(total);
  int j = 1;
  EdgeIndex e = 0;
  for (; j < f; ++j) {
    const auto& bucket = buckets_[static_cast<std::size_t>(j)];
    const std::uint64_t weight = bucket.size() * static_cast<std::uint64_t>(f - j);
    if (u < weight) {
      e = bucket[u / static_cast<std::uint64_t>(f - j)];
      break;
    }
    u -= weight;
  }

  auto k = rng_.below(static_cast<std::uint64_t>(j));
  FeatureIndex level = 0;
  for (; level < f; ++level) {
    if (spins_.occupied(e, level) && k-- == 0) break;
  }

  const bool rightward = rng_.coin();
  ev.target = rightward ? edge_right(e, l) : edge_left(e);
  ev.source = rightward ? edge_left(e) : edge_right(e, l);
  ev.direction = rightward ? -1 : 1;
  ev.feature = level;
  ev.uniform = rng_.uniform() * acceptance_threshold(j, f);
  ev.hamming_before = j;
  ev.active = true;
  ev.state_version = state_.version();
  return ev;
}

std::optional<EventRecord> Simulation::draw() {
  if (options_.mode == SamplingMode::all_arrivals) return draw_any();
  return draw_active();
}

std::optional<CollisionRecord> Simulation::apply(const EventRecord& ev) {
  if (ev.state_version != state_.version()) {
    throw ConsistencyError("stale event passed to Simulation");
  }
  ++events_;
  if (!ev.active) {
    apply_event(state_, ev);
    spins_.time = ev.time;
    return std::nullopt;
  }

  const std::size_t l = params_.length;
  const EdgeIndex behind = edge_between(ev.target, ev.direction, l);
  const EdgeIndex ahead = edge_between(ev.target, -ev.direction, l);
  const int behind_before = spins_.count(behind);
  const int ahead_before = spins_.count(ahead);

  auto collision = update_spins(spins_, ev, state_);
  apply_event(state_, ev);
  reindex(behind, behind_before);
  reindex(ahead, ahead_before);
  if (options_.track_ancestors) ancestors_.update(ev);

  ++active_events_;
  ++flips_per_site_[ev.target];
  ++flips_per_level_[static_cast<std::size_t>(ev.feature)];
  if (collision) {
    ++collision_count_;
    if (options_.record_collisions) collisions_.push_back(*collision);
  }
  if (options_.check_coupling) check_coupling(spins_, state_);
  if (!absorption_time_ && absorbed()) absorption_time_ = ev.time;
  return collision;
}

std::optional<EventRecord> Simulation::step() {
  std::optional<EventRecord> ev = std::exchange(pending_, std::nullopt);
  if (!ev) ev = draw();
  if (!ev) return std::nullopt;
  apply(*ev);
  return ev;
}

RunSummary Simulation::run(const RunConfig& config) {
  config.validate();
  RunSummary summary;
  const std::uint64_t start_events = events_;
  std::size_t next_snapshot = 0;
  const auto& times = config.snapshot_times;
  auto snapshot_until = [&](double limit, bool inclusive) {
    while (next_snapshot < times.size() &&
           (times[next_snapshot] < limit || (inclusive && times[next_snapshot] <= limit))) {
      SpinConfig copy = spins_;
      copy.time = times[next_snapshot];
      summary.snapshots.push_back(std::move(copy));
      ++next_snapshot;
    }
  };

  for (;;) {
    if (config.stop_on_absorption && absorbed()) {
      summary.stop_reason = StopReason::absorbed;
      // Nothing moves any more: the remaining snapshots all equal the final spins.
      snapshot_until(config.t_max.value_or(times.empty() ? 0.0 : times.back()), true);
      break;
    }
    if (config.max_events && events_ - start_events >= *config.max_events) {
      summary.stop_reason = StopReason::max_events;
      break;
    }
    if (!pending_) pending_ = draw();
    if (!pending_) {
      summary.stop_reason = StopReason::absorbed;
      const double horizon = config.t_max.value_or(times.empty() ? state_.time : times.back());
      snapshot_until(horizon, true);
      if (config.t_max && *config.t_max > state_.time) {
        state_.time = *config.t_max;
        spins_.time = *config.t_max;
      }
      break;
    }
    if (config.t_max && pending_->time > *config.t_max) {
      snapshot_until(*config.t_max, true);
      state_.time = *config.t_max;
      spins_.time = *config.t_max;
      summary.stop_reason = StopReason::t_max;
      break;
    }
    snapshot_until(pending_->time, false);

    const EventRecord ev = *std::exchange(pending_, std::nullopt);
    const auto collision = apply(ev);
    if (!config.observers.empty()) {
      const EventContext context{ev, collision, *this};
      for (Observer* observer : config.observers) {
        if (!ev.active && !observer->wants_inactive()) continue;
        try {
          observer->on_event(context);
        } catch (const std::exception& error) {
          throw ObserverError("observer failed at event " + std::to_string(events_) +
                              " (t = " + std::to_string(ev.time) + "): " + error.what());
        }
      }
    }
  }

  summary.events = events_;
  summary.active_events = active_events_;
  summary.collisions = collision_count_;
  summary.flips_per_level = flips_per_level_;
  summary.final_time = state_.time;
  summary.absorbed = absorbed();
  summary.absorption_time = absorption_time_;
  summary.final_state = state_;
  return summary;
}

}  // namespace axelrod
