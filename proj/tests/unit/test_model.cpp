#include <doctest.h>

#include <vector>

#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/model.hpp"

using namespace axelrod;

namespace {
ModelParams params(std::vector<int> q, std::size_t length) {
  ModelParams p;
  p.opinions = std::move(q);
  p.length = length;
  return p;
}
}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(params({2, 4}, 10).validate());
  CHECK_NOTHROW(params({2}, 10).validate());
  CHECK_THROWS_AS(params({1, 3}, 10).validate(), ParameterError);
  CHECK_THROWS_AS(params({}, 10).validate(), ParameterError);
  CHECK_THROWS_AS(params({2, 2}, 2).validate(), ParameterError);
  RandomStream rng(1);
  CHECK_THROWS_AS(init_state(params({1, 3}, 10), rng), ParameterError);
}

TEST_CASE("initial opinions are uniform on 1..q_i and reproducible") {
  const ModelParams p = params({2, 5}, 20'000);
  RandomStream a(3), b(3);
  const CultureState s = init_state(p, a);
  CHECK(s == init_state(p, b));
  std::vector<int> hist(6, 0);
  for (SiteIndex x = 0; x < p.length; ++x) {
    CHECK(s.opinion(x, 0) >= 1);
    CHECK(s.opinion(x, 0) <= 2);
    ++hist[static_cast<std::size_t>(s.opinion(x, 1))];
  }
  CHECK(hist[0] == 0);
  for (int v = 1; v <= 5; ++v) CHECK(hist[v] == doctest::Approx(4000).epsilon(0.07));
  CHECK(s.time == 0.0);
}

TEST_CASE("hamming distance") {
  const ModelParams p = params({3, 3}, 3);
  const std::vector<Opinion> cols = {1, 1, 1, 2, 2, 2};
  const CultureState s = make_state(p, cols);
  CHECK(hamming(s, 0, 0) == 0);
  CHECK(hamming(s, 0, 1) == 1);
  CHECK(hamming(s, 0, 2) == 2);
}

TEST_CASE("make_state rejects out-of-range opinions") {
  const ModelParams p = params({2, 2}, 3);
  const std::vector<Opinion> bad = {1, 1, 3, 1, 1, 1};
  CHECK_THROWS(make_state(p, bad));
  const std::vector<Opinion> short_list = {1, 1};
  CHECK_THROWS(make_state(p, short_list));
}

TEST_CASE("interaction rate") {
  CHECK(interaction_rate(0, 2) == 0.0);
  CHECK(interaction_rate(1, 2) == 0.25);
  CHECK(interaction_rate(2, 2) == 0.0);
  CHECK(acceptance_threshold(1, 2) == 0.5);
  CHECK_THROWS_AS(interaction_rate(3, 2), DomainError);
  CHECK_THROWS_AS(interaction_rate(-1, 2), DomainError);
  for (int f = 1; f <= 8; ++f) {
    double previous = 0.5;
    for (int j = 1; j <= f; ++j) {
      const double r = interaction_rate(j, f);
      CHECK(r <= previous);
      CHECK(r <= 0.5);
      CHECK(r >= 0.0);
      previous = r;
    }
  }
}

TEST_CASE("ring helpers") {
  CHECK(wrap_site(-1, 5) == 4);
  CHECK(wrap_site(5, 5) == 0);
  CHECK(edge_right(4, 5) == 0);
  CHECK(edge_between(0, -1, 5) == 4);
  CHECK(edge_between(0, 1, 5) == 0);
  CHECK(edge_between(3, -1, 5) == 2);
}
