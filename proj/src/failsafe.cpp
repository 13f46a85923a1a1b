#include "fsdamp/failsafe.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsdamp {

std::vector<Index> ScenarioEvaluation::violated(double tol) const {
  std::vector<Index> out;
  for (Index s = 0; s < worst_g.size(); ++s)
    if (worst_g(s) > tol) out.push_back(s);
  return out;
}

ScenarioEvaluation evaluate_all(ResponseEvaluator& evaluator, const Vector& x,
                                std::span<const Index> records, const ConstraintParams& params) {
  const Index ns = static_cast<Index>(evaluator.scenarios().size());
  const Index nr = static_cast<Index>(records.size());
  std::vector<EvalTask> tasks;
  tasks.reserve(static_cast<std::size_t>(ns * nr));
  for (Index s = 0; s < ns; ++s)
    for (Index r : records) tasks.push_back({s, r});
  const auto outcomes = evaluator.run(x, tasks, params, false);

  ScenarioEvaluation eval;
  eval.records.assign(records.begin(), records.end());
  eval.g.resize(ns, nr);
  eval.peak.resize(ns, nr);
  for (Index s = 0; s < ns; ++s)
    for (Index r = 0; r < nr; ++r) {
      const auto& v = outcomes[static_cast<std::size_t>(s * nr + r)].value;
      eval.g(s, r) = v.g;
      eval.peak(s, r) = v.d_max_exact;
    }
  eval.worst_g = nr > 0 ? Vector(eval.g.rowwise().maxCoeff()) : Vector::Constant(ns, -1.0);
  return eval;
}

std::vector<Index> select_critical(const Vector& g, std::span<const Index> working_set,
                                   double epsilon) {
  if (g.size() == 0) throw std::invalid_argument("no constraint values");
  const double g_max = g.maxCoeff();
  if (!(g_max > 0.0))
    throw std::logic_error("critical-scenario selection called with no violated constraint");
  std::vector<Index> out;
  for (Index i = 0; i < g.size(); ++i) {
    if (std::find(working_set.begin(), working_set.end(), i) != working_set.end()) continue;
    if ((g_max - g(i)) / g_max <= epsilon) out.push_back(i);
  }
  return out;
}

namespace {

std::vector<Index> merge_sorted(const std::vector<Index>& a, const std::vector<Index>& b) {
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

FinalDesign run_failsafe(const StructuralModel& model, const ScenarioSet& scenarios,
                         std::span<const GroundMotion> ensemble, const FailsafeConfig& config) {
  const auto wall_start = std::chrono::steady_clock::now();
  model.validate();
  if (ensemble.empty()) throw std::invalid_argument("ground-motion ensemble is empty");
  if (scenarios.size() < 1) throw std::invalid_argument("scenario set is empty");
  if (scenarios.n_dampers != model.n_dampers())
    throw std::invalid_argument("scenario set and model disagree on the number of dampers");
  for (const GroundMotion& gm : ensemble) gm.validate();
  if (!(config.epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  const double tol = config.slp.feasibility_tol;

  FinalDesign result;
  result.design.c_bar = config.c_bar;

  const auto modes = compute_lowest_modes(model, 1);
  if (!(modes[0].omega > 0.0)) throw std::runtime_error("bare structure has a rigid-body mode");
  result.fundamental_period = 2.0 * std::numbers::pi / modes[0].omega;
  result.dominant_record =
      select_dominant_record(ensemble, result.fundamental_period, config.spectral_zeta);

  ResponseEvaluator evaluator(model, scenarios, ensemble, config.c_bar, config.newmark,
                              config.threads);
  WorkingSetState state;
  state.epsilon = config.epsilon;
  state.x = Vector::Constant(model.n_dampers(), config.x0);
  if (config.full_set) {
    for (Index s = 0; s < scenarios.size(); ++s) state.working_set.push_back(s);
  } else {
    state.working_set = {0};
  }
  result.active_records = {result.dominant_record};

  long p = config.slp.p_schedule.start;
  long q = config.slp.q_schedule.start;
  ConstraintParams params{p, q, config.slp.quadrature};
  bool converged = false;
  bool aborted = false;

  for (int pass = 0; pass < config.max_record_passes && !aborted; ++pass) {
    // Sequence of relaxed sub-problems over the active records.
    while (true) {
      const SlpResult slp = slp_solve(evaluator, state.working_set, result.active_records,
                                      state.x, config.slp, p, q, state.k);
      SubproblemRecord rec;
      rec.pass = pass;
      rec.index = state.k;
      rec.working_set = state.working_set;
      rec.records = result.active_records;
      rec.iterations = slp.iterations;
      rec.converged = slp.converged;
      rec.cost = slp.x.sum();
      rec.max_g = slp.max_g;
      rec.p = slp.params_used.p;
      rec.q = slp.params_used.q;
      rec.dropped_planes = slp.dropped_planes;
      rec.infeasible_lps = slp.infeasible_lps;
      result.subproblems.push_back(rec);
      result.log.insert(result.log.end(), slp.log.begin(), slp.log.end());

      state.x = slp.x;
      state.eval_counter = evaluator.evaluations();
      params = slp.params_used;
      p = slp.next_p;
      q = slp.next_q;
      if (!slp.converged) {
        aborted = true;
        break;
      }

      const ScenarioEvaluation eval = evaluate_all(evaluator, state.x, result.active_records, params);
      state.violated = eval.violated(tol);
      if (state.violated.empty()) break;

      state.candidates = select_critical(eval.worst_g, state.working_set, state.epsilon);
      if (state.candidates.empty()) {
        // The largest violation sits inside the working set; take the worst
        // violated scenario outside it so the set still grows.
        Index worst = -1;
        for (Index s : state.violated) {
          if (std::binary_search(state.working_set.begin(), state.working_set.end(), s)) continue;
          if (worst < 0 || eval.worst_g(s) > eval.worst_g(worst)) worst = s;
        }
        if (worst < 0) {
          aborted = true;
          break;
        }
        state.candidates = {worst};
      }
      state.working_set = merge_sorted(state.working_set, state.candidates);
      ++state.k;
      if (state.k >= config.max_subproblems) {
        aborted = true;
        break;
      }
    }
    if (aborted) break;

    // Check the records not yet in the active set.
    std::vector<Index> inactive;
    for (Index r = 0; r < static_cast<Index>(ensemble.size()); ++r)
      if (std::find(result.active_records.begin(), result.active_records.end(), r) ==
          result.active_records.end())
        inactive.push_back(r);
    if (inactive.empty()) {
      converged = true;
      break;
    }
    const ScenarioEvaluation others = evaluate_all(evaluator, state.x, inactive, params);
    std::vector<Index> added;
    for (Index c = 0; c < static_cast<Index>(inactive.size()); ++c)
      if (others.g.col(c).maxCoeff() > tol) added.push_back(inactive[static_cast<std::size_t>(c)]);
    if (added.empty()) {
      converged = true;
      break;
    }
    result.active_records = merge_sorted(result.active_records, added);
    ++state.k;
  }

  result.eval_counter = evaluator.evaluations();
  // Post-hoc check over every scenario and record; not counted as optimization effort.
  std::vector<Index> all_records;
  for (Index r = 0; r < static_cast<Index>(ensemble.size()); ++r) all_records.push_back(r);
  result.final_check = evaluate_all(evaluator, state.x, all_records, params);

  result.design.x = state.x;
  result.converged = converged;
  result.final_params = params;
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace fsdamp
