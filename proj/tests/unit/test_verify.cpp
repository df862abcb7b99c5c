#include <doctest.h>

#include <algorithm>

#include "axelrod_lab/errors.hpp"
#include "axelrod_lab/verify.hpp"

using namespace axelrod;

TEST_CASE("known targets") {
  const auto& t = verification_targets();
  CHECK(t.size() == 9);
  CHECK(std::find(t.begin(), t.end(), "lemma7-window") != t.end());
  CHECK_THROWS_AS(verify("lemma99", {}), PreconditionError);
}

TEST_CASE("small structural verification passes") {
  VerifyOptions o;
  o.length = 60;
  o.max_events = 5'000;
  for (const char* target : {"coupling", "ancestors", "parity"}) {
    const VerificationReport r = verify(target, o);
    CHECK(r.passed());
    CHECK_FALSE(r.checks.empty());
  }
}

TEST_CASE("parity is vacuous without a two-opinion level") {
  VerifyOptions o;
  o.q = {3, 4};
  o.length = 40;
  o.max_events = 2'000;
  const VerificationReport r = verify("parity", o);
  CHECK(r.passed());
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("two-feature targets reject other feature counts") {
  VerifyOptions o;
  o.q = {2, 3, 4};
  o.length = 100;
  CHECK_THROWS_AS(verify("lemma7-window", o), UnsupportedConfiguration);
  CHECK_THROWS_AS(verify("lemma6", o), UnsupportedConfiguration);
}

TEST_CASE("density order needs the richer level first") {
  VerifyOptions o;
  o.q = {2, 5};
  o.length = 100;
  o.replicates = 2;
  CHECK_THROWS_AS(verify("lemma5", o), PreconditionError);
}

TEST_CASE("lemma 6 at q1 = q2 reports without asserting") {
  VerifyOptions o;
  o.q = {3, 3};
  o.length = 500;
  o.replicates = 2;
  o.min_samples = 2'000;
  const VerificationReport r = verify("lemma6", o);
  CHECK(r.passed());
}

TEST_CASE("decile comparison") {
  std::vector<double> mixture;
  for (int k = 1; k <= 1000; ++k) mixture.push_back(static_cast<double>(k % 10 + 1));
  std::sort(mixture.begin(), mixture.end());
  const std::vector<std::uint64_t> same = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  for (const auto& d : compare_at_deciles(same, mixture)) CHECK(d.holds);
  const std::vector<std::uint64_t> small(100, 1);
  const auto checks = compare_at_deciles(small, mixture);
  CHECK(std::any_of(checks.begin(), checks.end(), [](const DominanceCheck& d) { return !d.holds; }));
}
