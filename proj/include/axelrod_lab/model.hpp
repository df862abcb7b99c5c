#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "axelrod_lab/rng.hpp"

namespace axelrod {

using SiteIndex = std::size_t;
/// Edge k joins sites k and k + 1 (mod L).
using EdgeIndex = std::size_t;
/// Zero-based feature (level) index; user-facing output is one-based.
using FeatureIndex = int;
using Opinion = std::int32_t;

enum class Boundary { periodic_ring };

struct ModelParams {
  std::size_t length = 10'000;
  /// Opinion count q_i for each feature; its size is the feature count F.
  std::vector<int> opinions;
  Boundary boundary = Boundary::periodic_ring;
  std::uint64_t seed = 0;

  int features() const noexcept { return static_cast<int>(opinions.size()); }

  /// Throws ParameterError unless L >= 3, F >= 1 and every q_i >= 2.
  void validate() const;
};

inline SiteIndex wrap_site(std::ptrdiff_t x, std::size_t length) noexcept {
  const auto l = static_cast<std::ptrdiff_t>(length);
  return static_cast<SiteIndex>(((x % l) + l) % l);
}

inline SiteIndex edge_left(EdgeIndex e) noexcept { return e; }
inline SiteIndex edge_right(EdgeIndex e, std::size_t length) noexcept {
  return e + 1 == length ? 0 : e + 1;
}

/// Edge joining neighbouring sites x and y = x +/- 1.
inline EdgeIndex edge_between(SiteIndex x, int direction, std::size_t length) noexcept {
  return direction > 0 ? x : (x == 0 ? length - 1 : x - 1);
}

/// Opinion configuration on the ring plus the simulation clock.
///
/// `version` counts opinion mutations; events remember the version they were
/// drawn against so stale events can be rejected.
class CultureState {
 public:
  CultureState() = default;
  CultureState(std::size_t length, int features);

  std::size_t length() const noexcept { return length_; }
  int features() const noexcept { return features_; }

  Opinion opinion(SiteIndex x, FeatureIndex i) const noexcept {
    return opinions_[x * static_cast<std::size_t>(features_) + static_cast<std::size_t>(i)];
  }
  void set_opinion(SiteIndex x, FeatureIndex i, Opinion value) noexcept {
    opinions_[x * static_cast<std::size_t>(features_) + static_cast<std::size_t>(i)] = value;
    ++version_;
  }

  /// Culture vector of site x.
  std::span<const Opinion> column(SiteIndex x) const noexcept {
    return {opinions_.data() + x * static_cast<std::size_t>(features_),
            static_cast<std::size_t>(features_)};
  }
  std::span<const Opinion> opinions() const noexcept { return opinions_; }

  std::uint64_t version() const noexcept { return version_; }

  /// Opinions and clock; the mutation counter is bookkeeping and not compared.
  bool operator==(const CultureState& other) const {
    return length_ == other.length_ && features_ == other.features_ &&
           opinions_ == other.opinions_ && time == other.time;
  }

  double time = 0.0;

 private:
  std::size_t length_ = 0;
  int features_ = 0;
  std::vector<Opinion> opinions_;
  std::uint64_t version_ = 0;
};

/// Builds a CultureState from explicit columns (site-major, opinions in 1..q_i).
CultureState make_state(const ModelParams& params, std::span<const Opinion> opinions);

/// Independent uniform opinions on {1, ..., q_i} at every (site, feature).
CultureState init_state(const ModelParams& params, RandomStream& rng);

/// Number of features on which sites x and y disagree.
int hamming(const CultureState& state, SiteIndex x, SiteIndex y);

/// r(j) = (1/2)(1/j)(1 - j/F) for 1 <= j <= F, r(0) = 0.
/// Rate at which one given neighbour copies one given disagreeing feature.
double interaction_rate(int disagreements, int features);

/// Acceptance threshold 2 r(j) = (F - j) / (j F) for an arrow.
double acceptance_threshold(int disagreements, int features);

}  // namespace axelrod
