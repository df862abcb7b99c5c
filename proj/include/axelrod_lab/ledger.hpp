#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "axelrod_lab/event.hpp"
#include "axelrod_lab/spins.hpp"

namespace axelrod {

/// Hit history of one edge that was a blockade at time zero.
struct BlockadeEntry {
  EdgeIndex edge = 0;
  /// Collisions into the edge up to and including the breaking one.
  std::uint64_t hits = 0;
  bool broke = false;
  /// First time xi(e) != F; meaningful only when `broke`.
  double break_time = 0.0;
};

/// Weight bookkeeping for the initial configuration.
///   active edge with j particles: weight -j
///   blockade: -(F - 1) + hits until it breaks (unknown while censored)
struct WeightLedger {
  int features = 0;
  /// xi_0(e) for every edge.
  std::vector<int> initial_counts;
  std::vector<BlockadeEntry> blockades;

  EdgeClass initial_class(EdgeIndex e) const {
    return classify_edge(initial_counts[e], features);
  }
  /// Realized weight of edge e; empty for censored blockades.
  std::optional<long> weight(EdgeIndex e) const;

  std::size_t broken_count() const;
  std::size_t censored_count() const { return blockades.size() - broken_count(); }
  /// Hits of broken blockades only.
  std::vector<std::uint64_t> broken_hits() const;

 private:
  friend class BlockadeTracker;
  friend WeightLedger track_blockades(const SpinConfig&, std::span<const CollisionRecord>);
  /// edge -> position in `blockades`, or npos.
  std::vector<std::size_t> slot_;
};

/// Builds the ledger from the initial spins and the full collision trace.
WeightLedger track_blockades(const SpinConfig& initial,
                             std::span<const CollisionRecord> collisions);

/// Streaming form of track_blockades, fed one collision at a time.
class BlockadeTracker {
 public:
  explicit BlockadeTracker(const SpinConfig& initial);

  void record(const CollisionRecord& collision);

  const WeightLedger& ledger() const noexcept { return ledger_; }

 private:
  WeightLedger ledger_;
};

}  // namespace axelrod
