#include <doctest.h>

#include <vector>

#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/spins.hpp"

using namespace axelrod;

namespace {

ModelParams params(std::vector<int> q, std::size_t length) {
  ModelParams p;
  p.opinions = std::move(q);
  p.length = length;
  return p;
}

// Arrow from target + direction into target at `feature`, drawn against `s`.
EventRecord arrow(const CultureState& s, SiteIndex target, int direction, FeatureIndex feature) {
  EventRecord ev;
  ev.time = s.time + 1.0;
  ev.target = target;
  ev.direction = direction;
  ev.source = wrap_site(static_cast<std::ptrdiff_t>(target) + direction, s.length());
  ev.feature = feature;
  ev.hamming_before = hamming(s, target, ev.source);
  ev.active = true;
  ev.state_version = s.version();
  return ev;
}

// Applies one active arrow to both the opinions and the spins.
std::optional<CollisionRecord> step(CultureState& s, SpinConfig& spins, const EventRecord& ev) {
  const CultureState before = s;
  s.set_opinion(ev.target, ev.feature, s.opinion(ev.source, ev.feature));
  s.time = ev.time;
  return update_spins(spins, ev, before);
}

}  // namespace

TEST_CASE("consensus has no particles") {
  const ModelParams p = params({3, 3}, 6);
  const CultureState s = make_state(p, std::vector<Opinion>(12, 2));
  const SpinConfig z = derive_spins(s);
  for (EdgeIndex e = 0; e < 6; ++e) CHECK(z.count(e) == 0);
  CHECK(z.live_count() == 0);
  CHECK(z.blockade_count() == 0);
}

TEST_CASE("one differing site gives two particles") {
  const ModelParams p = params({2, 2}, 7);
  std::vector<Opinion> cols(14, 1);
  cols[3 * 2 + 0] = 2;
  const SpinConfig z = derive_spins(make_state(p, cols));
  CHECK(z.level_count(0) == 2);
  CHECK(z.level_count(1) == 0);
  CHECK(z.occupied(2, 0));
  CHECK(z.occupied(3, 0));
  CHECK(z.live_count() == 2);
}

TEST_CASE("edge classification") {
  CHECK(classify_edge(0, 2) == EdgeClass::empty);
  CHECK(classify_edge(1, 2) == EdgeClass::live);
  CHECK(classify_edge(2, 2) == EdgeClass::blockade);
  CHECK(classify_edge(2, 3) == EdgeClass::live);
  CHECK_THROWS_AS(classify_edge(3, 2), DomainError);
  CHECK_THROWS_AS(classify_edge(-1, 2), DomainError);
}

TEST_CASE("a jump onto an empty pair keeps the count") {
  // Level 0: z = 2, x = 2, y = 1; arrow y -> x moves the particle from edge (x, y) to (z, x).
  const ModelParams p = params({3, 2}, 5);
  CultureState s = make_state(p, std::vector<Opinion>{2, 1, 2, 1, 1, 1, 2, 1, 2, 1});
  SpinConfig spins = derive_spins(s);
  const std::size_t before = spins.level_count(0);
  const auto c = step(s, spins, arrow(s, 1, 1, 0));
  CHECK_FALSE(c.has_value());
  CHECK(spins.level_count(0) == before);
  CHECK(spins.occupied(0, 0));
  CHECK_FALSE(spins.occupied(1, 0));
  CHECK(spins == derive_spins(s));
}

TEST_CASE("a collision at a two-opinion level always annihilates") {
  // Level 0: z = 1, x = 2, y = 1.
  const ModelParams p = params({2, 2}, 5);
  CultureState s = make_state(p, std::vector<Opinion>{1, 1, 2, 1, 1, 1, 2, 1, 2, 1});
  SpinConfig spins = derive_spins(s);
  const auto c = step(s, spins, arrow(s, 1, 1, 0));
  REQUIRE(c.has_value());
  CHECK(c->outcome == CollisionOutcome::annihilation);
  CHECK(c->edge == 0);
  CHECK(c->level == 0);
  CHECK_FALSE(spins.occupied(0, 0));
  CHECK_FALSE(spins.occupied(1, 0));
  CHECK(spins == derive_spins(s));
}

TEST_CASE("a collision between different outer opinions coalesces") {
  // Level 1 with five opinions: z = 3, x = 2, y = 1, arrow from the left (B = -1).
  const ModelParams p = params({2, 5}, 5);
  CultureState s = make_state(p, std::vector<Opinion>{1, 1, 1, 2, 1, 3, 1, 3, 1, 3});
  // sites: 0:(1,1) 1:(1,2) 2:(1,3); x = 1, y = 0 (B = -1), z = 2.
  SpinConfig spins = derive_spins(s);
  const auto c = step(s, spins, arrow(s, 1, -1, 1));
  REQUIRE(c.has_value());
  CHECK(c->outcome == CollisionOutcome::coalescence);
  CHECK(c->edge == 1);
  CHECK(c->xi_before_target == 1);
  CHECK(spins.occupied(1, 1));
  CHECK_FALSE(spins.occupied(0, 1));
  CHECK(spins == derive_spins(s));
}

TEST_CASE("inactive arrows only move the clock") {
  const ModelParams p = params({2, 2}, 4);
  CultureState s = make_state(p, std::vector<Opinion>{1, 1, 2, 1, 1, 2, 2, 2});
  SpinConfig spins = derive_spins(s);
  const SpinConfig before = spins;
  EventRecord ev = arrow(s, 0, 1, 0);
  ev.active = false;
  CHECK_FALSE(update_spins(spins, ev, s).has_value());
  CHECK(spins == before);
  CHECK(spins.time == ev.time);
}

TEST_CASE("coupling check detects tampering") {
  const ModelParams p = params({2, 2}, 4);
  const CultureState s = make_state(p, std::vector<Opinion>{1, 1, 2, 1, 1, 2, 2, 2});
  SpinConfig spins = derive_spins(s);
  CHECK_NOTHROW(check_coupling(spins, s));
  spins.set(0, 1, !spins.occupied(0, 1));
  CHECK_THROWS_AS(check_coupling(spins, s), CouplingError);
}

TEST_CASE("fraction of blockades at (2,4) is close to 3/8") {
  ModelParams p = params({2, 4}, 100'000);
  RandomStream rng(6);
  const SpinConfig z = derive_spins(init_state(p, rng));
  const double frac = static_cast<double>(z.blockade_count()) / 100'000.0;
  CHECK(std::abs(frac - 0.375) <= 3.0 * std::sqrt(0.375 * 0.625 / 100'000.0));
}
