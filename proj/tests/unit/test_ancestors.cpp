#include <doctest.h>

#include <vector>

#include "axelrod_lab/ancestors.hpp"
#include "axelrod_lab/engine.hpp"

using namespace axelrod;

TEST_CASE("one active arrow makes the source the ancestor") {
  ModelParams p;
  p.opinions = {3, 3};
  p.length = 6;
  const CultureState s = make_state(p, std::vector<Opinion>{1, 1, 2, 2, 3, 3, 1, 1, 2, 2, 3, 3});
  AncestorTable table(s);
  for (SiteIndex x = 0; x < 6; ++x) CHECK(table.ancestor(x, 0) == x);
  EventRecord ev;
  ev.target = 2;
  ev.source = 3;
  ev.direction = 1;
  ev.feature = 1;
  ev.active = true;
  update_ancestors(table, ev);
  CHECK(table.ancestor(2, 1) == 3);
  CHECK(table.ancestor(2, 0) == 2);
  CHECK(table.displacement(2, 1) == 1);
  // Chains compose: 1 copies from 2, whose level-1 ancestor is 3.
  ev.target = 1;
  ev.source = 2;
  update_ancestors(table, ev);
  CHECK(table.ancestor(1, 1) == 3);
  CHECK(table.displacement(1, 1) == 2);
}

TEST_CASE("ancestors wrap around the ring") {
  ModelParams p;
  p.opinions = {2};
  p.length = 4;
  const CultureState s = make_state(p, std::vector<Opinion>{1, 2, 1, 2});
  AncestorTable table(s);
  EventRecord ev;
  ev.target = 0;
  ev.source = 3;
  ev.direction = -1;
  ev.feature = 0;
  ev.active = true;
  table.update(ev);
  CHECK(table.ancestor(0, 0) == 3);
  CHECK(table.displacement(0, 0) == -1);
}

TEST_CASE("identity and order hold through long runs, including winding paths") {
  ModelParams p;
  p.opinions = {2, 3};
  p.length = 8;
  SimulationOptions opts;
  opts.track_ancestors = true;
  for (std::uint64_t r = 0; r < 50; ++r) {
    Simulation sim(p, RandomStream(derive_seed(4, r)), opts);
    RunConfig cfg;
    cfg.max_events = 5'000;
    sim.run(cfg);
    CHECK(sim.ancestors()->identity_violations(sim.state()) == 0);
    CHECK(sim.ancestors()->order_violations(sim.state()) == 0);
  }
}

TEST_CASE("tampered opinions are reported as identity violations") {
  ModelParams p;
  p.opinions = {2, 2};
  p.length = 5;
  RandomStream rng(1);
  CultureState s = init_state(p, rng);
  const AncestorTable table(s);
  CHECK(table.identity_violations(s) == 0);
  s.set_opinion(2, 0, s.opinion(2, 0) == 1 ? 2 : 1);
  CHECK(table.identity_violations(s) == 1);
}
