#include <doctest.h>

#include <set>
#include <vector>

#include "axelrod_lab/rng.hpp"
#include "axelrod_lab/stats.hpp"

using namespace axelrod;

TEST_CASE("same seed gives the same stream") {
  RandomStream a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("derived seeds are distinct and stable") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(derive_seed(7, r));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
  CHECK(derive_seed(7, 3) != derive_seed(8, 3));
}

TEST_CASE("uniform and bounded draws stay in range") {
  RandomStream rng(1);
  std::vector<int> counts(6, 0);
  for (int k = 0; k < 60'000; ++k) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double v = rng.uniform_positive();
    CHECK((v > 0.0 && v <= 1.0));
    ++counts[rng.below(6)];
  }
  for (int c : counts) CHECK(c == doctest::Approx(10'000).epsilon(0.05));
}

TEST_CASE("exponential waiting times pass a KS test") {
  RandomStream rng(5);
  std::vector<double> samples;
  for (int k = 0; k < 5000; ++k) samples.push_back(rng.exponential(3.0));
  // 1% critical value 1.63 / sqrt(n).
  CHECK(stats::ks_exponential(samples, 3.0) < 1.63 / std::sqrt(5000.0));
  CHECK(stats::ks_exponential(samples, 1.0) > 1.63 / std::sqrt(5000.0));
}

TEST_CASE("geometric draws have support {1, 2, ...} and mean 1/p") {
  RandomStream rng(9);
  stats::Accumulator acc;
  for (int k = 0; k < 40'000; ++k) {
    const auto y = rng.geometric(0.25);
    CHECK(y >= 1);
    acc.add(static_cast<double>(y));
  }
  CHECK(acc.mean() == doctest::Approx(4.0).epsilon(0.03));
  CHECK(rng.geometric(1.0) == 1);
}
