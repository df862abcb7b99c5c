#include "axelrod_lab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/parallel.hpp"

namespace axelrod {

namespace stats {

double empirical_cdf(std::span<const double> sorted_samples, double x) {
  if (sorted_samples.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

double quantile(std::span<const double> sorted_samples, double p) {
  if (sorted_samples.empty()) return 0.0;
  const auto n = sorted_samples.size();
  auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n);
  return sorted_samples[k - 1];
}

double ks_exponential(std::vector<double> samples, double rate) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double cdf = 1.0 - std::exp(-rate * samples[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - cdf, cdf - static_cast<double>(k) / n});
  }
  return d;
}

}  // namespace stats

namespace {

void require_two_features(int features, const char* what) {
  if (features != 2) {
    throw UnsupportedConfiguration(std::string(what) + " requires F = 2, got F = " +
                                   std::to_string(features));
  }
}

}  // namespace

DensitySnapshot density_estimates(const SpinConfig& spins) {
  require_two_features(spins.features(), "density_estimates");
  DensitySnapshot snap;
  snap.time = spins.time;
  snap.edges = spins.length();
  snap.blockades = spins.blockade_count();
  for (int i = 0; i < 2; ++i) {
    const auto level = static_cast<std::size_t>(i);
    snap.occupied[level] = spins.level_count(i);
    snap.active[level] = snap.occupied[level] - snap.blockades;
  }
  return snap;
}

bool DensityOrderReport::holds() const {
  return std::all_of(checkpoints.begin(), checkpoints.end(),
                     [](const DensityCheckpoint& c) { return c.holds; });
}

DensityOrderReport check_density_order(
    std::span<const std::vector<DensitySnapshot>> trajectories, int q1, int q2) {
  if (!(q1 > q2)) {
    throw PreconditionError("check_density_order needs q1 > q2 (orient the levels), got (" +
                            std::to_string(q1) + ", " + std::to_string(q2) + ")");
  }
  DensityOrderReport report;
  if (trajectories.empty()) return report;
  const std::size_t points = trajectories.front().size();
  for (const auto& t : trajectories) {
    if (t.size() != points) throw PreconditionError("replicates have different checkpoint counts");
  }
  for (std::size_t k = 0; k < points; ++k) {
    stats::Accumulator diff;
    for (const auto& t : trajectories) diff.add(t[k].u_active(0) - t[k].u_active(1));
    DensityCheckpoint c;
    c.time = trajectories.front()[k].time;
    c.replicates = diff.count();
    c.mean_difference = diff.mean();
    c.standard_error = diff.standard_error();
    c.slack = 3.0 * c.standard_error;
    c.holds = c.mean_difference >= -c.slack;
    report.checkpoints.push_back(c);
  }
  return report;
}

bool absorption_detect(const SpinConfig& spins) {
  for (EdgeIndex e = 0; e < spins.length(); ++e) {
    const int n = spins.count(e);
    if (n != 0 && n != spins.features()) return false;
  }
  return true;
}

std::size_t RegimeReport::absorbed_count() const {
  return static_cast<std::size_t>(std::count_if(
      replicates.begin(), replicates.end(), [](const RegimeReplicate& r) { return r.absorbed; }));
}

std::vector<RegimeReport> regime_experiment(const RegimeConfig& config) {
  if (config.pairs.empty()) throw PreconditionError("regime_experiment: empty grid");
  std::vector<RegimeReport> reports;
  for (const auto& [q1, q2] : config.pairs) {
    ModelParams params;
    params.length = config.length;
    params.opinions = {q1, q2};
    params.seed = config.seed;
    params.validate();

    RegimeReport report;
    report.q1 = q1;
    report.q2 = q2;
    report.length = config.length;
    report.replicates.resize(config.replicates);

    parallel_for(config.replicates, config.workers, [&](std::size_t r) {
      const std::uint64_t seed = derive_seed(config.seed, r);
      SimulationOptions options;
      options.mode = config.mode;
      Simulation sim(params, RandomStream(seed), options);
      RunConfig run;
      run.t_max = config.t_max;
      run.max_events = config.max_events;
      run.stop_on_absorption = true;
      const RunSummary summary = sim.run(run);

      RegimeReplicate& row = report.replicates[r];
      row.replicate = r;
      row.seed = seed;
      row.absorbed = summary.absorbed;
      row.absorption_time = summary.absorption_time.value_or(summary.final_time);
      row.surviving_blockade_density = static_cast<double>(sim.spins().blockade_count()) /
                                       static_cast<double>(params.length);
      row.active_events = summary.active_events;
      row.flips_per_site.assign(sim.flips_per_site().begin(), sim.flips_per_site().end());
    });

    for (const auto& row : report.replicates) {
      if (row.absorbed) {
        report.blockade_density.add(row.surviving_blockade_density);
        report.absorption_time.add(row.absorption_time);
      }
      double flips = 0.0;
      for (auto v : row.flips_per_site) flips += static_cast<double>(v);
      report.flips_per_site.add(flips / static_cast<double>(config.length));
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<std::uint64_t> sample_collision_counts(int q, std::size_t edges, RandomStream& rng) {
  if (q < 2) throw DomainError("sample_collision_counts: q must be at least 2");
  const double success = 1.0 / static_cast<double>(q - 1);
  std::vector<std::uint64_t> draws(edges);
  for (auto& d : draws) d = rng.geometric(success);
  return draws;
}

double window_weight_statistic(const SpinConfig& initial, std::span<const std::uint64_t> y1,
                               std::span<const std::uint64_t> y2, EdgeWindow window) {
  require_two_features(initial.features(), "window_weight_statistic");
  if (window.size == 0) throw DomainError("window_weight_statistic: empty window");
  if (window.size > initial.length()) throw DomainError("window larger than the ring");
  if (y1.size() < initial.length() || y2.size() < initial.length()) {
    throw DomainError("window_weight_statistic: need one draw per edge");
  }
  // Sum doubled to stay in integers: 2w = (Y1 + Y2 - 2) for blockades, -2 for live edges.
  long long doubled = 0;
  for (std::size_t k = 0; k < window.size; ++k) {
    const EdgeIndex e = (window.begin + k) % initial.length();
    const int xi = initial.count(e);
    if (xi == 2) {
      doubled += static_cast<long long>(y1[e] + y2[e]) - 2;
    } else if (xi == 1) {
      doubled -= 2;
    }
  }
  return static_cast<double>(doubled) / (2.0 * static_cast<double>(window.size));
}

PairFrequencies initial_pair_frequencies(const SpinConfig& initial) {
  require_two_features(initial.features(), "initial_pair_frequencies");
  PairFrequencies freq;
  const std::size_t l = initial.length();
  freq.edges = l;
  for (EdgeIndex e = 0; e < l; ++e) {
    const EdgeIndex next = (e + 1) % l;
    ++freq.xi[static_cast<std::size_t>(initial.count(e))];
    if (initial.count(e) != 1 || initial.count(next) != 1) continue;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (initial.occupied(e, i) && initial.occupied(next, j)) {
          ++freq.a_prime[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
      }
    }
  }
  return freq;
}

std::vector<double> geometric_time_grid(double horizon) {
  std::vector<double> grid;
  for (double t = 1.0; t <= horizon; t *= 2.0) grid.push_back(t);
  return grid;
}

}  // namespace axelrod
