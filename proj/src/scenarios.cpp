#include "fsdamp/scenarios.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fsdamp {

double FailureScenario::factor(Index k) const { return is_damaged(k) ? nu : 1.0; }

bool FailureScenario::is_damaged(Index k) const {
  return std::binary_search(damaged.begin(), damaged.end(), k);
}

ScenarioSet ScenarioSet::no_failure(Index n_dampers) {
  ScenarioSet set;
  set.n_dampers = n_dampers;
  set.scenarios.push_back(FailureScenario{});
  return set;
}

std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Multiplicative form; each partial product is itself a binomial coefficient.
  __extension__ using Wide = __int128;
  Wide value = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > cap) return -1;
  }
  return static_cast<std::int64_t>(value);
}

namespace {

void append_subsets(Index n, Index k, double nu, FailureScenario::Kind kind,
                    std::vector<FailureScenario>& out) {
  std::vector<Index> subset(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    FailureScenario s;
    s.id = static_cast<Index>(out.size());
    s.damaged = subset;
    s.nu = nu;
    s.kind = kind;
    out.push_back(std::move(s));

    // Advance to the next combination in lexicographic order.
    Index i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

ScenarioSet enumerate_scenarios(Index n_dampers, Index complete_k, Index partial_k, double nu,
                                std::int64_t max_scenarios) {
  if (n_dampers < 0) throw std::invalid_argument("number of dampers must be nonnegative");
  if (complete_k < 0 || complete_k > n_dampers)
    throw std::invalid_argument("complete-failure group size must lie in [0, " +
                                std::to_string(n_dampers) + "]");
  if (partial_k < 0 || partial_k > n_dampers)
    throw std::invalid_argument("partial-failure group size must lie in [0, " +
                                std::to_string(n_dampers) + "]");
  if (partial_k > 0 && !(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("partial damage factor nu must satisfy 0 < nu < 1");

  ScenarioSet set;
  set.n_dampers = n_dampers;
  const std::int64_t nc = complete_k > 0 ? binomial_capped(n_dampers, complete_k, max_scenarios) : 0;
  const std::int64_t np = partial_k > 0 ? binomial_capped(n_dampers, partial_k, max_scenarios) : 0;
  if (nc < 0 || np < 0 || 1 + nc + np > max_scenarios)
    throw std::overflow_error("scenario count exceeds the cap of " + std::to_string(max_scenarios));
  set.n_complete = nc;
  set.n_partial = np;

  set.scenarios.reserve(static_cast<std::size_t>(1 + nc + np));
  set.scenarios.push_back(FailureScenario{});
  if (complete_k > 0)
    append_subsets(n_dampers, complete_k, 0.0, FailureScenario::Kind::complete, set.scenarios);
  if (partial_k > 0)
    append_subsets(n_dampers, partial_k, nu, FailureScenario::Kind::partial, set.scenarios);
  return set;
}

}  // namespace fsdamp
