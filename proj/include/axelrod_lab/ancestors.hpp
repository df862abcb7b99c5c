#pragma once

#include <cstddef>
#include <vector>

#include "axelrod_lab/event.hpp"
#include "axelrod_lab/model.hpp"

namespace axelrod {

/// Origin of every (site, feature) opinion along active paths.
///
/// Ancestors are stored as displacements on the universal cover of the ring:
/// the ancestor of (x, i) sits at x + displacement(x, i) in the periodic lift
/// to the integers. Paths in the lift never cross, so the order of ancestors
/// holds exactly even after paths wind around the ring.
class AncestorTable {
 public:
  AncestorTable() = default;
  explicit AncestorTable(const CultureState& initial);

  std::size_t length() const noexcept { return length_; }
  int features() const noexcept { return features_; }

  SiteIndex ancestor(SiteIndex x, FeatureIndex i) const noexcept;
  long displacement(SiteIndex x, FeatureIndex i) const noexcept {
    return disp_[index(x, i)];
  }

  const CultureState& origin() const noexcept { return origin_; }

  /// anc(target, i) := anc(source, i) for an active event.
  void update(const EventRecord& ev);

  /// Number of (x, i) with opinion(x, i) != initial opinion of its ancestor.
  std::size_t identity_violations(const CultureState& state) const;

  /// Number of (x, i) with lifted ancestors out of order:
  /// a(x, i) <= a(x + 1, i), strictly when the pair between them is occupied.
  std::size_t order_violations(const CultureState& state) const;

 private:
  std::size_t index(SiteIndex x, FeatureIndex i) const noexcept {
    return x * static_cast<std::size_t>(features_) + static_cast<std::size_t>(i);
  }

  std::size_t length_ = 0;
  int features_ = 0;
  std::vector<long> disp_;
  CultureState origin_;
};

/// Free-function form of AncestorTable::update.
void update_ancestors(AncestorTable& table, const EventRecord& ev);

}  // namespace axelrod
