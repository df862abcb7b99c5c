#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "axelrod_lab/event.hpp"
#include "axelrod_lab/model.hpp"

namespace axelrod {

/// Disagreement particles: zeta(e, i) = 1 iff the endpoints of edge e differ
/// at feature i; xi(e) counts the particles on edge e.
class SpinConfig {
 public:
  SpinConfig() = default;
  SpinConfig(std::size_t length, int features);

  std::size_t length() const noexcept { return length_; }
  int features() const noexcept { return features_; }

  bool occupied(EdgeIndex e, FeatureIndex i) const noexcept {
    return zeta_[e * static_cast<std::size_t>(features_) + static_cast<std::size_t>(i)] != 0;
  }
  int count(EdgeIndex e) const noexcept { return xi_[e]; }

  /// Number of occupied pairs at level i.
  std::size_t level_count(FeatureIndex i) const noexcept {
    return level_counts_[static_cast<std::size_t>(i)];
  }
  /// Number of edges with xi = F.
  std::size_t blockade_count() const noexcept { return blockades_; }
  /// Number of edges with 0 < xi < F.
  std::size_t live_count() const noexcept { return live_; }

  void set(EdgeIndex e, FeatureIndex i, bool value) noexcept;

  /// Compares occupancy only; the clock mirror is ignored.
  bool operator==(const SpinConfig& other) const {
    return length_ == other.length_ && features_ == other.features_ && zeta_ == other.zeta_;
  }

  double time = 0.0;

 private:
  std::size_t length_ = 0;
  int features_ = 0;
  std::vector<std::uint8_t> zeta_;
  std::vector<int> xi_;
  std::vector<std::size_t> level_counts_;
  std::size_t blockades_ = 0;
  std::size_t live_ = 0;
};

enum class EdgeClass { empty, live, blockade };

const char* to_string(EdgeClass c) noexcept;

/// Spins recomputed from scratch from the opinions.
SpinConfig derive_spins(const CultureState& state);

/// Applies the particle move induced by `ev` in place. The pair behind the
/// arrow empties; the pair ahead either receives a jumping particle or hosts
/// a collision, resolved from the actual opinions of the outer neighbours.
/// `before` is the culture state the event was drawn against (not yet updated).
/// Returns the collision, if any. Inactive events only move the clock.
std::optional<CollisionRecord> update_spins(SpinConfig& spins, const EventRecord& ev,
                                            const CultureState& before);

/// Throws CouplingError if `spins` differs from derive_spins(state).
void check_coupling(const SpinConfig& spins, const CultureState& state);

/// empty iff xi = 0, blockade iff xi = F, live otherwise.
EdgeClass classify_edge(int xi, int features);

}  // namespace axelrod
