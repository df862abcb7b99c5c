#include <doctest.h>

#include <vector>

#include "axelrod_lab/analysis.hpp"
#include "axelrod_lab/errors.hpp"

using namespace axelrod;

namespace {

ModelParams params(std::vector<int> q, std::size_t length) {
  ModelParams p;
  p.opinions = std::move(q);
  p.length = length;
  return p;
}

}  // namespace

TEST_CASE("densities of a consensus are zero") {
  const ModelParams p = params({2, 4}, 10);
  const DensitySnapshot d = density_estimates(derive_spins(make_state(p, std::vector<Opinion>(20, 1))));
  CHECK(d.ubar(0) == 0.0);
  CHECK(d.ubar(1) == 0.0);
  CHECK(d.u_active(0) == 0.0);
  CHECK(d.blockade_density() == 0.0);
}

TEST_CASE("densities need two features") {
  const ModelParams p = params({2, 4, 3}, 10);
  RandomStream rng(1);
  CHECK_THROWS_AS(density_estimates(derive_spins(init_state(p, rng))), UnsupportedConfiguration);
}

TEST_CASE("densities match a direct count and share the frozen part") {
  const ModelParams p = params({3, 4}, 500);
  RandomStream rng(2);
  const CultureState s = init_state(p, rng);
  const DensitySnapshot d = density_estimates(derive_spins(s));
  std::size_t occ[2] = {0, 0}, act[2] = {0, 0}, block = 0;
  for (SiteIndex x = 0; x < p.length; ++x) {
    const SiteIndex y = (x + 1) % p.length;
    const bool d0 = s.opinion(x, 0) != s.opinion(y, 0);
    const bool d1 = s.opinion(x, 1) != s.opinion(y, 1);
    occ[0] += d0;
    occ[1] += d1;
    act[0] += d0 && !d1;
    act[1] += d1 && !d0;
    block += d0 && d1;
  }
  CHECK(d.occupied[0] == occ[0]);
  CHECK(d.occupied[1] == occ[1]);
  CHECK(d.active[0] == act[0]);
  CHECK(d.active[1] == act[1]);
  CHECK(d.blockades == block);
  CHECK(d.occupied[0] - d.active[0] == d.occupied[1] - d.active[1]);
}

TEST_CASE("density order check") {
  DensitySnapshot hi, lo;
  hi.edges = lo.edges = 100;
  hi.active = {30, 10};
  lo.active = {10, 30};
  const std::vector<std::vector<DensitySnapshot>> good = {{hi}, {hi}, {hi}};
  CHECK(check_density_order(good, 5, 2).holds());
  const std::vector<std::vector<DensitySnapshot>> bad = {{lo}, {lo}, {lo}};
  CHECK_FALSE(check_density_order(bad, 5, 2).holds());
  CHECK_THROWS_AS(check_density_order(good, 2, 5), PreconditionError);
  CHECK_THROWS_AS(check_density_order(good, 3, 3), PreconditionError);
}

TEST_CASE("absorption detection") {
  const ModelParams p = params({2, 2}, 6);
  CHECK(absorption_detect(derive_spins(make_state(p, std::vector<Opinion>(12, 1)))));
  std::vector<Opinion> one = {1, 1, 1, 1, 1, 1, 2, 1, 2, 1, 2, 1};
  CHECK_FALSE(absorption_detect(derive_spins(make_state(p, one))));
  // Alternating cultures: every edge is a blockade and nothing can move.
  const std::vector<Opinion> alternating = {1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 2, 2};
  const CultureState s = make_state(p, alternating);
  const SpinConfig z = derive_spins(s);
  CHECK(z.blockade_count() == 6);
  CHECK(absorption_detect(z));
  Simulation sim(p, s, RandomStream(1));
  RunConfig cfg;
  cfg.stop_on_absorption = false;
  cfg.max_events = 5'000;
  const RunSummary r = sim.run(cfg);
  CHECK(r.active_events == 0);
  CHECK(sim.state() == [&] { CultureState c = s; c.time = sim.time(); return c; }());
}

TEST_CASE("window statistic") {
  const ModelParams p = params({2, 5}, 6);
  const std::vector<std::uint64_t> y(6, 3);
  CHECK_THROWS_AS(window_weight_statistic(derive_spins(make_state(p, std::vector<Opinion>(12, 1))),
                                          y, y, {0, 0}),
                  DomainError);
  CHECK(window_weight_statistic(derive_spins(make_state(p, std::vector<Opinion>(12, 1))), y, y,
                                {0, 6}) == 0.0);
  // sites (1,1) (2,2) (2,2) (2,1) (2,1) (2,1): edges 0 blockade, 1 empty, 2 live, 3, 4 empty, 5 live.
  const CultureState s = make_state(p, std::vector<Opinion>{1, 1, 2, 2, 2, 2, 2, 1, 2, 1, 2, 1});
  const SpinConfig z = derive_spins(s);
  const std::vector<std::uint64_t> y1 = {1, 1, 1, 1, 1, 1};
  const std::vector<std::uint64_t> y2 = {6, 1, 1, 1, 1, 1};
  // ((1 + 6)/2 - 1) - 2 live edges = 0.5 over 6 edges.
  CHECK(window_weight_statistic(z, y1, y2, {0, 6}) == doctest::Approx(0.5 / 6.0));
  // Wrapping window {5, 0}: 2.5 - 1 over 2 edges.
  CHECK(window_weight_statistic(z, y1, y2, {5, 2}) == doctest::Approx(0.75));
}

TEST_CASE("window statistic converges to h1") {
  const ModelParams p = params({3, 4}, 50'000);
  RandomStream rng(3);
  const SpinConfig z = derive_spins(init_state(p, rng));
  const auto y1 = sample_collision_counts(3, p.length, rng);
  const auto y2 = sample_collision_counts(4, p.length, rng);
  CHECK(window_weight_statistic(z, y1, y2, {0, p.length}) == doctest::Approx(1.0 / 3.0).epsilon(0.1));
}

TEST_CASE("pair frequencies agree with a direct count") {
  const ModelParams p = params({2, 4}, 3000);
  const PairFrequencies none =
      initial_pair_frequencies(derive_spins(make_state(p, std::vector<Opinion>(6000, 2))));
  CHECK(none.xi_frequency(1) == 0.0);
  CHECK(none.xi_frequency(2) == 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(none.a_prime_frequency(i, j) == 0.0);

  RandomStream rng(4);
  const CultureState s = init_state(p, rng);
  const PairFrequencies f = initial_pair_frequencies(derive_spins(s));
  auto differs = [&](SiteIndex x, int i) { return s.opinion(x, i) != s.opinion((x + 1) % p.length, i); };
  std::size_t a[2][2] = {{0, 0}, {0, 0}}, two = 0;
  for (SiteIndex x = 0; x < p.length; ++x) {
    const SiteIndex n = (x + 1) % p.length;
    two += differs(x, 0) && differs(x, 1);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        a[i][j] += differs(x, i) && !differs(x, 1 - i) && differs(n, j) && !differs(n, 1 - j);
  }
  CHECK(f.xi[2] == two);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(f.a_prime[i][j] == a[i][j]);
}

TEST_CASE("regime experiment is reproducible and independent of the worker count") {
  RegimeConfig cfg;
  cfg.pairs = {{2, 2}, {2, 4}};
  cfg.length = 60;
  cfg.replicates = 6;
  cfg.seed = 3;
  cfg.workers = 1;
  const auto a = regime_experiment(cfg);
  cfg.workers = 3;
  const auto b = regime_experiment(cfg);
  REQUIRE(a.size() == 2);
  for (std::size_t k = 0; k < a.size(); ++k) {
    REQUIRE(a[k].replicates.size() == 6);
    for (std::size_t r = 0; r < 6; ++r) {
      CHECK(a[k].replicates[r].absorption_time == b[k].replicates[r].absorption_time);
      CHECK(a[k].replicates[r].surviving_blockade_density ==
            b[k].replicates[r].surviving_blockade_density);
      CHECK(a[k].replicates[r].seed == derive_seed(3, r));
    }
  }
  CHECK(a[0].absorbed_count() == 6);
}

TEST_CASE("geometric time grid") {
  CHECK(geometric_time_grid(10.0) == std::vector<double>{1, 2, 4, 8});
  CHECK(geometric_time_grid(8.0) == std::vector<double>{1, 2, 4, 8});
  CHECK(geometric_time_grid(0.5).empty());
}

TEST_CASE("collision count draws follow the geometric law") {
  RandomStream rng(8);
  const auto y = sample_collision_counts(5, 40'000, rng);
  std::size_t over2 = 0;
  double sum = 0.0;
  for (auto v : y) {
    over2 += v > 2;
    sum += static_cast<double>(v);
  }
  CHECK(static_cast<double>(over2) / 40'000.0 == doctest::Approx(9.0 / 16.0).epsilon(0.03));
  CHECK(sum / 40'000.0 == doctest::Approx(4.0).epsilon(0.03));
  for (auto v : sample_collision_counts(2, 100, rng)) CHECK(v == 1);
}
