#include "axelrod_lab/ledger.hpp"

#include <limits>

namespace axelrod {

namespace {

constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

void record_into(WeightLedger& ledger, std::vector<std::size_t>& slot,
                 const CollisionRecord& collision) {
  const std::size_t k = slot[collision.edge];
  if (k == kNoSlot) return;
  BlockadeEntry& entry = ledger.blockades[k];
  if (entry.broke) return;
  ++entry.hits;
  // Frozen particles cannot leave, so the count only drops by annihilation.
  if (collision.outcome == CollisionOutcome::annihilation) {
    entry.broke = true;
    entry.break_time = collision.time;
  }
}

WeightLedger make_ledger(const SpinConfig& initial, std::vector<std::size_t>& slot) {
  WeightLedger ledger;
  ledger.features = initial.features();
  ledger.initial_counts.resize(initial.length());
  slot.assign(initial.length(), kNoSlot);
  for (EdgeIndex e = 0; e < initial.length(); ++e) {
    ledger.initial_counts[e] = initial.count(e);
    if (initial.count(e) == initial.features()) {
      slot[e] = ledger.blockades.size();
      ledger.blockades.push_back({e, 0, false, 0.0});
    }
  }
  return ledger;
}

}  // namespace

std::optional<long> WeightLedger::weight(EdgeIndex e) const {
  const int j = initial_counts[e];
  if (j != features) return -static_cast<long>(j);
  const BlockadeEntry& b = blockades[slot_[e]];
  if (!b.broke) return std::nullopt;
  return -static_cast<long>(features - 1) + static_cast<long>(b.hits);
}

std::size_t WeightLedger::broken_count() const {
  std::size_t n = 0;
  for (const auto& b : blockades) n += b.broke;
  return n;
}

std::vector<std::uint64_t> WeightLedger::broken_hits() const {
  std::vector<std::uint64_t> hits;
  for (const auto& b : blockades) {
    if (b.broke) hits.push_back(b.hits);
  }
  return hits;
}

WeightLedger track_blockades(const SpinConfig& initial,
                             std::span<const CollisionRecord> collisions) {
  std::vector<std::size_t> slot;
  WeightLedger ledger = make_ledger(initial, slot);
  for (const auto& c : collisions) record_into(ledger, slot, c);
  ledger.slot_ = std::move(slot);
  return ledger;
}

BlockadeTracker::BlockadeTracker(const SpinConfig& initial) {
  std::vector<std::size_t> slot;
  ledger_ = make_ledger(initial, slot);
  ledger_.slot_ = std::move(slot);
}

void BlockadeTracker::record(const CollisionRecord& collision) {
  record_into(ledger_, ledger_.slot_, collision);
}

}  // namespace axelrod
