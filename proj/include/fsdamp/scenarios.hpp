#pragma once

#include <cstdint>
#include <vector>

#include "fsdamp/linalg.hpp"

namespace fsdamp {

/// A damage pattern: every damper listed in `damaged` keeps `nu` times its
/// damping coefficient. `nu == 0` is complete failure. Id 0 with an empty
/// `damaged` list is the no-failure case.
struct FailureScenario {
  enum class Kind { none, complete, partial };

  Index id = 0;
  std::vector<Index> damaged;  // sorted, zero-based damper indices
  double nu = 1.0;
  Kind kind = Kind::none;

  /// Capacity factor applied to damper `k` (1 if undamaged).
  double factor(Index k) const;
  bool is_damaged(Index k) const;
};

struct ScenarioSet {
  std::vector<FailureScenario> scenarios;
  Index n_dampers = 0;
  std::int64_t n_complete = 0;
  std::int64_t n_partial = 0;

  std::int64_t size() const { return static_cast<std::int64_t>(scenarios.size()); }
  const FailureScenario& operator[](Index id) const { return scenarios.at(static_cast<std::size_t>(id)); }

  /// Set holding only the no-failure scenario.
  static ScenarioSet no_failure(Index n_dampers);
};

/// Binomial coefficient, or -1 when it exceeds `cap`.
std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap);

/// Builds the scenario list: the no-failure case, then every size-`complete_k`
/// subset with nu = 0, then every size-`partial_k` subset with factor `nu`.
/// Subsets are in lexicographic order so ids are stable between runs. A group
/// size of 0 disables that group.
ScenarioSet enumerate_scenarios(Index n_dampers, Index complete_k, Index partial_k, double nu,
                                std::int64_t max_scenarios = 100000);

}  // namespace fsdamp
