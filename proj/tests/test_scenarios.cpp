#include "doctest.h"
#include "fsdamp/scenarios.hpp"

#include <set>

using namespace fsdamp;

TEST_CASE("sixteen dampers, singles complete and pairs partial") {
  const ScenarioSet set = enumerate_scenarios(16, 1, 2, 0.5);
  CHECK(set.n_complete == 16);
  CHECK(set.n_partial == 120);
  CHECK(set.size() == 137);
  CHECK(set[0].kind == FailureScenario::Kind::none);
  CHECK(set[0].damaged.empty());
  CHECK(set[1].damaged == std::vector<Index>{0});
  CHECK(set[16].damaged == std::vector<Index>{15});
  CHECK(set[17].damaged == std::vector<Index>{0, 1});
  CHECK(set[136].damaged == std::vector<Index>{14, 15});
  CHECK(set[17].factor(0) == 0.5);
  CHECK(set[17].factor(2) == 1.0);
  CHECK(set[1].factor(0) == 0.0);
}

TEST_CASE("count matches binomials for every small configuration") {
  for (Index n = 1; n <= 12; ++n)
    for (Index kc = 0; kc <= std::min<Index>(n, 3); ++kc)
      for (Index kp = 0; kp <= std::min<Index>(n, 3); ++kp) {
        const ScenarioSet set = enumerate_scenarios(n, kc, kp, 0.5);
        const std::int64_t expect =
            1 + (kc ? binomial_capped(n, kc, 1 << 30) : 0) + (kp ? binomial_capped(n, kp, 1 << 30) : 0);
        CHECK(set.size() == expect);
        std::set<std::pair<std::vector<Index>, double>> seen;
        for (Index i = 0; i < set.size(); ++i) {
          CHECK(set[i].id == i);
          CHECK(std::is_sorted(set[i].damaged.begin(), set[i].damaged.end()));
          seen.insert({set[i].damaged, set[i].nu});
        }
        CHECK(static_cast<std::int64_t>(seen.size()) == set.size());
      }
}

TEST_CASE("subsets are lexicographic") {
  const ScenarioSet set = enumerate_scenarios(5, 0, 3, 0.3);
  for (Index i = 2; i < set.size(); ++i) CHECK(set[i - 1].damaged < set[i].damaged);
}

TEST_CASE("invalid scenario requests are rejected") {
  CHECK_THROWS_AS(enumerate_scenarios(4, 5, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_scenarios(4, 1, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_scenarios(4, 1, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_scenarios(60, 0, 30, 0.5), std::overflow_error);
  CHECK(binomial_capped(60, 30, 1000) == -1);
  CHECK(binomial_capped(16, 2, 1000) == 120);
}

TEST_CASE("no-failure set") {
  const ScenarioSet set = ScenarioSet::no_failure(3);
  CHECK(set.size() == 1);
  CHECK(set[0].factor(2) == 1.0);
}
