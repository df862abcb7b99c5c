#pragma once

#include <cstdint>

#include "axelrod_lab/model.hpp"

namespace axelrod {

/// One arrow of the graphical representation: at `time` the clock of
/// (target, feature) rings and site target looks at source = target + direction.
struct EventRecord {
  double time = 0.0;
  SiteIndex target = 0;
  FeatureIndex feature = 0;
  int direction = 1;  // -1 or +1
  double uniform = 0.0;
  SiteIndex source = 0;
  bool active = false;
  int hamming_before = 0;
  /// CultureState::version() the event was drawn against.
  std::uint64_t state_version = 0;
};

enum class CollisionOutcome { annihilation, coalescence };

const char* to_string(CollisionOutcome outcome) noexcept;

/// A particle jumped onto an occupied (edge, level) pair.
struct CollisionRecord {
  double time = 0.0;
  EdgeIndex edge = 0;
  FeatureIndex level = 0;
  CollisionOutcome outcome = CollisionOutcome::annihilation;
  /// Particle count of the landing edge just before the collision.
  int xi_before_target = 0;
};

}  // namespace axelrod
