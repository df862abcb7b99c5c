#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "axelrod_lab/engine.hpp"
#include "axelrod_lab/spins.hpp"
#include "axelrod_lab/stats.hpp"

namespace axelrod {

/// Spatial densities of a two-feature spin configuration. Counts are exact;
/// densities are count / L.
struct DensitySnapshot {
  double time = 0.0;
  std::size_t edges = 0;
  std::array<std::size_t, 2> occupied{};  ///< pairs occupied at level i
  std::array<std::size_t, 2> active{};    ///< occupied at level i, edge not a blockade
  std::size_t blockades = 0;

  double ubar(int level) const { return ratio(occupied[static_cast<std::size_t>(level)]); }
  double u_active(int level) const { return ratio(active[static_cast<std::size_t>(level)]); }
  double blockade_density() const { return ratio(blockades); }

 private:
  double ratio(std::size_t count) const {
    return edges ? static_cast<double>(count) / static_cast<double>(edges) : 0.0;
  }
};

/// Throws UnsupportedConfiguration unless F = 2.
DensitySnapshot density_estimates(const SpinConfig& spins);

struct DensityCheckpoint {
  double time = 0.0;
  std::size_t replicates = 0;
  double mean_difference = 0.0;  ///< mean of u_1 - u_2 (level 1 has more opinions)
  double standard_error = 0.0;
  double slack = 0.0;            ///< 3 standard errors
  bool holds = false;            ///< mean_difference >= -slack
};

struct DensityOrderReport {
  std::vector<DensityCheckpoint> checkpoints;
  bool holds() const;
};

/// Checks u_1(t) >= u_2(t) at each snapshot time across replicates, where
/// level 1 carries q1 > q2 opinions. trajectories[r][k] is replicate r at the
/// k-th checkpoint; all replicates must share the same times.
DensityOrderReport check_density_order(
    std::span<const std::vector<DensitySnapshot>> trajectories, int q1, int q2);

/// True iff no edge is live (every edge carries 0 or F particles).
bool absorption_detect(const SpinConfig& spins);

struct RegimeReplicate {
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  bool absorbed = false;
  double absorption_time = 0.0;  ///< final time when censored
  double surviving_blockade_density = 0.0;
  std::uint64_t active_events = 0;
  std::vector<std::uint64_t> flips_per_site;
};

struct RegimeReport {
  int q1 = 0;
  int q2 = 0;
  std::size_t length = 0;
  std::vector<RegimeReplicate> replicates;
  stats::Accumulator blockade_density;   ///< over absorbed replicates
  stats::Accumulator absorption_time;    ///< over absorbed replicates
  stats::Accumulator flips_per_site;     ///< mean flips per site, all replicates

  std::size_t absorbed_count() const;
  stats::Interval blockade_ci95() const { return stats::confidence95(blockade_density); }
};

struct RegimeConfig {
  std::vector<std::pair<int, int>> pairs;
  std::size_t length = 1000;
  std::size_t replicates = 50;
  std::uint64_t seed = 0;
  std::optional<double> t_max;
  std::optional<std::uint64_t> max_events;
  SamplingMode mode = SamplingMode::active_only;
  std::size_t workers = 1;
};

/// Runs every pair to absorption (or the stopping limits) and reports the
/// surviving blockade density. Replicate r uses derive_seed(seed, r).
std::vector<RegimeReport> regime_experiment(const RegimeConfig& config);

/// Mean surviving blockade density below which a finite ring is read as
/// having clustered. Pilot-calibrated implementation constant.
inline constexpr double kClusteredBlockadeDensity = 0.05;

/// Half-open range of edges [begin, begin + size) on the ring.
struct EdgeWindow {
  EdgeIndex begin = 0;
  std::size_t size = 0;
};

/// Independent Geometric((q - 1)^{-1}) draws, one per edge.
std::vector<std::uint64_t> sample_collision_counts(int q, std::size_t edges, RandomStream& rng);

/// Window average of ((Y1 + Y2)/2 - 1) 1{xi_0 = 2} - 1{xi_0 = 1}.
/// Throws DomainError for an empty window, UnsupportedConfiguration unless F = 2.
double window_weight_statistic(const SpinConfig& initial, std::span<const std::uint64_t> y1,
                               std::span<const std::uint64_t> y2, EdgeWindow window);

/// Counts of initial configurations over all edges of the ring.
struct PairFrequencies {
  std::size_t edges = 0;
  std::array<std::size_t, 3> xi{};  ///< edges with xi_0 = 0, 1, 2
  /// a_prime[i][j]: edges e with xi(e) = xi(e+1) = 1, zeta(e, i) = zeta(e+1, j) = 1.
  std::array<std::array<std::size_t, 2>, 2> a_prime{};

  double xi_frequency(int k) const { return ratio(xi[static_cast<std::size_t>(k)]); }
  double a_prime_frequency(int i, int j) const {
    return ratio(a_prime[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }

 private:
  double ratio(std::size_t count) const {
    return edges ? static_cast<double>(count) / static_cast<double>(edges) : 0.0;
  }
};

PairFrequencies initial_pair_frequencies(const SpinConfig& initial);

/// Geometric time grid 1, 2, 4, ... up to and including `horizon`.
std::vector<double> geometric_time_grid(double horizon);

}  // namespace axelrod
