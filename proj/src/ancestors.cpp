#include "axelrod_lab/ancestors.hpp"

namespace axelrod {

AncestorTable::AncestorTable(const CultureState& initial)
    : length_(initial.length()),
      features_(initial.features()),
      disp_(initial.length() * static_cast<std::size_t>(initial.features()), 0),
      origin_(initial) {}

SiteIndex AncestorTable::ancestor(SiteIndex x, FeatureIndex i) const noexcept {
  return wrap_site(static_cast<std::ptrdiff_t>(x) + disp_[index(x, i)], length_);
}

void AncestorTable::update(const EventRecord& ev) {
  if (!ev.active) return;
  // Source sits at target + direction on the lift.
  disp_[index(ev.target, ev.feature)] = disp_[index(ev.source, ev.feature)] + ev.direction;
}

std::size_t AncestorTable::identity_violations(const CultureState& state) const {
  std::size_t bad = 0;
  for (SiteIndex x = 0; x < length_; ++x) {
    for (FeatureIndex i = 0; i < features_; ++i) {
      bad += state.opinion(x, i) != origin_.opinion(ancestor(x, i), i);
    }
  }
  return bad;
}

std::size_t AncestorTable::order_violations(const CultureState& state) const {
  std::size_t bad = 0;
  for (SiteIndex x = 0; x < length_; ++x) {
    const SiteIndex next = edge_right(x, length_);
    for (FeatureIndex i = 0; i < features_; ++i) {
      // Lifted positions x + d(x) and x + 1 + d(x + 1).
      const long here = disp_[index(x, i)];
      const long there = 1 + disp_[index(next, i)];
      const bool differ = state.opinion(x, i) != state.opinion(next, i);
      bad += differ ? !(here < there) : !(here <= there);
    }
  }
  return bad;
}

void update_ancestors(AncestorTable& table, const EventRecord& ev) { table.update(ev); }

}  // namespace axelrod
