#include "axelrod_lab/spins.hpp"

#include <string>

#include "axelrod_lab/errors.hpp"

namespace axelrod {

const char* to_string(CollisionOutcome outcome) noexcept {
  return outcome == CollisionOutcome::annihilation ? "annihilation" : "coalescence";
}

const char* to_string(EdgeClass c) noexcept {
  switch (c) {
    case EdgeClass::empty: return "empty";
    case EdgeClass::live: return "live";
    case EdgeClass::blockade: return "blockade";
  }
  return "?";
}

SpinConfig::SpinConfig(std::size_t length, int features)
    : length_(length),
      features_(features),
      zeta_(length * static_cast<std::size_t>(features), 0),
      xi_(length, 0),
      level_counts_(static_cast<std::size_t>(features), 0) {}

void SpinConfig::set(EdgeIndex e, FeatureIndex i, bool value) noexcept {
  auto& cell = zeta_[e * static_cast<std::size_t>(features_) + static_cast<std::size_t>(i)];
  if ((cell != 0) == value) return;
  const int before = xi_[e];
  const int after = before + (value ? 1 : -1);
  cell = value ? 1 : 0;
  xi_[e] = after;
  auto& level = level_counts_[static_cast<std::size_t>(i)];
  level = value ? level + 1 : level - 1;

  const auto is_live = [this](int n) { return n > 0 && n < features_; };
  if (before == features_) --blockades_;
  if (after == features_) ++blockades_;
  if (is_live(before)) --live_;
  if (is_live(after)) ++live_;
}

SpinConfig derive_spins(const CultureState& state) {
  const std::size_t l = state.length();
  const int f = state.features();
  SpinConfig spins(l, f);
  for (EdgeIndex e = 0; e < l; ++e) {
    const auto left = state.column(edge_left(e));
    const auto right = state.column(edge_right(e, l));
    for (FeatureIndex i = 0; i < f; ++i) {
      if (left[static_cast<std::size_t>(i)] != right[static_cast<std::size_t>(i)]) {
        spins.set(e, i, true);
      }
    }
  }
  spins.time = state.time;
  return spins;
}

std::optional<CollisionRecord> update_spins(SpinConfig& spins, const EventRecord& ev,
                                            const CultureState& before) {
  spins.time = ev.time;
  if (!ev.active) return std::nullopt;

  const std::size_t l = spins.length();
  const FeatureIndex i = ev.feature;
  const EdgeIndex behind = edge_between(ev.target, ev.direction, l);
  const EdgeIndex ahead = edge_between(ev.target, -ev.direction, l);
  const SiteIndex beyond = wrap_site(static_cast<std::ptrdiff_t>(ev.target) - ev.direction, l);

  if (!spins.occupied(behind, i)) {
    throw CouplingError("active arrow across empty pair (edge " + std::to_string(behind) +
                        ", level " + std::to_string(i + 1) + ")");
  }
  spins.set(behind, i, false);

  // After the copy the target holds the source opinion.
  const bool differs_after = before.opinion(ev.source, i) != before.opinion(beyond, i);
  if (!spins.occupied(ahead, i)) {
    if (!differs_after) {
      throw CouplingError("jump onto empty pair left it empty (edge " + std::to_string(ahead) + ")");
    }
    spins.set(ahead, i, true);
    return std::nullopt;
  }

  CollisionRecord collision;
  collision.time = ev.time;
  collision.edge = ahead;
  collision.level = i;
  collision.xi_before_target = spins.count(ahead);
  collision.outcome = differs_after ? CollisionOutcome::coalescence : CollisionOutcome::annihilation;
  if (!differs_after) spins.set(ahead, i, false);
  return collision;
}

void check_coupling(const SpinConfig& spins, const CultureState& state) {
  const SpinConfig fresh = derive_spins(state);
  if (!(fresh == spins)) {
    for (EdgeIndex e = 0; e < spins.length(); ++e) {
      for (FeatureIndex i = 0; i < spins.features(); ++i) {
        if (fresh.occupied(e, i) != spins.occupied(e, i)) {
          throw CouplingError("spin mismatch at edge " + std::to_string(e) + ", level " +
                              std::to_string(i + 1) + " (t = " + std::to_string(state.time) + ")");
        }
      }
    }
  }
}

EdgeClass classify_edge(int xi, int features) {
  if (features < 1 || xi < 0 || xi > features) {
    throw DomainError("classify_edge: need 0 <= xi <= F, got xi = " + std::to_string(xi) +
                      ", F = " + std::to_string(features));
  }
  if (xi == 0) return EdgeClass::empty;
  if (xi == features) return EdgeClass::blockade;
  return EdgeClass::live;
}

}  // namespace axelrod
