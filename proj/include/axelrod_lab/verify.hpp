#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "axelrod_lab/analysis.hpp"
#include "axelrod_lab/engine.hpp"

namespace axelrod {

/// One compared quantity: pass iff |estimate - target| <= bound, unless the
/// check is one-sided (estimate >= target - bound) or exact.
struct Check {
  std::string label;
  double estimate = 0.0;
  double target = 0.0;
  double bound = 0.0;
  std::uint64_t n = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string target;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
};

/// Unset fields take the per-target defaults documented in the README.
struct VerifyOptions {
  std::vector<int> q;
  std::optional<std::size_t> length;
  std::optional<std::size_t> replicates;
  std::optional<std::uint64_t> max_events;
  std::optional<std::uint64_t> min_samples;
  std::optional<double> t_max;
  std::vector<double> snapshot_times;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

/// Known identifiers: lemma1, lemma4, lemma5, lemma6, lemma7-window,
/// init-frequencies, coupling, parity, ancestors.
const std::vector<std::string>& verification_targets();

/// Throws PreconditionError for an unknown target.
VerificationReport verify(std::string_view target, const VerifyOptions& options);

/// Acceptance of arrows whose target disagrees with the source at the drawn
/// feature, split by the edge particle count before the arrow.
struct AcceptanceTally {
  std::vector<std::uint64_t> candidates;  ///< index j = hamming_before
  std::vector<std::uint64_t> accepted;
};

/// Runs all-arrival sampling until `min_candidates` arrows with j = 1 have
/// been seen (or the max_events limit). Only F = 2 is supported by the
/// acceptance criterion but any F runs.
AcceptanceTally tally_acceptance(const ModelParams& params, std::uint64_t min_candidates,
                                 std::uint64_t max_events);

struct CollisionTally {
  std::vector<std::uint64_t> collisions;     ///< per level
  std::vector<std::uint64_t> annihilations;  ///< per level
  std::size_t replicates = 0;
};

/// Runs replicates (active-only sampling, to absorption) until every level
/// with q_i > 2 has at least `min_collisions` collisions, or `max_replicates`.
CollisionTally tally_collisions(const ModelParams& params, std::uint64_t min_collisions,
                                std::size_t max_replicates, std::size_t workers);

/// u_1 - u_2 trajectories of `replicates` runs sampled at `times`.
std::vector<std::vector<DensitySnapshot>> density_trajectories(
    const ModelParams& params, std::size_t replicates, const std::vector<double>& times,
    std::size_t workers);

struct BlockadeHits {
  std::vector<std::uint64_t> hits;  ///< broken blockades only
  std::size_t censored = 0;
  std::size_t initial_blockades = 0;
};

/// Hits-before-break of initial blockades over `replicates` runs
/// (active-only sampling, to absorption or t_max).
BlockadeHits collect_blockade_hits(const ModelParams& params, std::size_t replicates,
                                   std::optional<double> t_max, std::size_t workers);

/// Sorted draws of (Y1 + Y2) / 2 with independent Y_i ~ Geometric((q_i - 1)^{-1}).
std::vector<double> sample_geometric_mixture(int q1, int q2, std::size_t n, RandomStream& rng);

struct DominanceCheck {
  double point = 0.0;          ///< evaluation point (a decile of the mixture sample)
  double hits_cdf = 0.0;
  double mixture_cdf = 0.0;
  double slack = 0.0;          ///< 3 sigma of the CDF difference
  bool holds = false;          ///< hits_cdf <= mixture_cdf + slack
};

/// One-sided pointwise comparison of empirical CDFs at the mixture deciles.
std::vector<DominanceCheck> compare_at_deciles(const std::vector<std::uint64_t>& hits,
                                               const std::vector<double>& mixture_sorted);

/// Exact invariant violation counts.
struct StructuralCounts {
  std::uint64_t events = 0;
  std::uint64_t active_events = 0;
  std::uint64_t coupling = 0;
  std::uint64_t ancestor_identity = 0;
  std::uint64_t ancestor_order = 0;
  std::uint64_t monotone_counts = 0;
  std::uint64_t parity = 0;
  std::uint64_t frozen_identity = 0;
  std::size_t parity_levels = 0;  ///< number of levels with q_i = 2

  std::uint64_t total() const {
    return coupling + ancestor_identity + ancestor_order + monotone_counts + parity +
           frozen_identity;
  }
};

/// Spends `max_events` events over fresh replicates (restarted at absorption)
/// and checks every invariant after each active event. Ancestor and coupling
/// checks are O(L F) each.
StructuralCounts structural_check(const ModelParams& params, std::uint64_t max_events);

}  // namespace axelrod
