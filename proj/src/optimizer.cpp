#include "fsdamp/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fsdamp/parallel.hpp"

namespace fsdamp {

void ContinuationSchedule::validate(bool must_be_even) const {
  if (start < 1 || step < 0 || cap < start)
    throw std::invalid_argument("continuation schedule must satisfy 1 <= start <= cap, step >= 0");
  if (must_be_even && (start % 2 != 0 || step % 2 != 0 || cap % 2 != 0))
    throw std::invalid_argument("p schedule values must be even");
}

SlpConfig::SlpConfig(Index n_dampers, double move_limit)
    : ml(move_limit), delta(convergence_delta(move_limit, n_dampers)) {}

double SlpConfig::convergence_delta(double move_limit, Index n_dampers) {
  return 0.10 * move_limit * std::sqrt(static_cast<double>(n_dampers));
}

void SlpConfig::validate() const {
  if (!(ml > 0.0 && ml <= 1.0)) throw std::invalid_argument("move limit must lie in (0, 1]");
  if (i_min < 1 || i_max < i_min) throw std::invalid_argument("need 1 <= i_min <= i_max");
  if (drop_margin < 0.0) throw std::invalid_argument("drop margin must be nonnegative");
  p_schedule.validate(true);
  q_schedule.validate(false);
}

ResponseEvaluator::ResponseEvaluator(const StructuralModel& model, const ScenarioSet& scenarios,
                                     std::span<const GroundMotion> ensemble, double c_bar,
                                     NewmarkParams newmark, int threads)
    : model_(model),
      scenarios_(scenarios),
      ensemble_(ensemble),
      c_bar_(c_bar),
      newmark_(newmark),
      threads_(threads) {}

std::vector<EvalOutcome> ResponseEvaluator::run(const Vector& x, std::span<const EvalTask> tasks,
                                                const ConstraintParams& params, bool gradients) {
  std::vector<EvalOutcome> out(tasks.size());
  const DesignVector design{x, c_bar_};
  parallel_for(tasks.size(), threads_, [&](std::size_t t) {
    const FailureScenario& scenario = scenarios_[tasks[t].scenario];
    const GroundMotion& gm = ensemble_[static_cast<std::size_t>(tasks[t].record)];
    const Matrix cd = assemble_added_damping(model_, design, scenario);
    const ResponseHistory h = newmark_solve(model_, cd, gm, newmark_);
    if (gradients) {
      GradientResult r = adjoint_gradient(model_, design, scenario, h, params, newmark_);
      out[t].value = std::move(r.value);
      out[t].gradient = std::move(r.gradient);
    } else {
      out[t].value = evaluate_constraint(h, model_, params);
    }
  });
  evaluations_ += static_cast<long>(tasks.size()) * (gradients ? 2 : 1);
  return out;
}

LpResult solve_move_limited_lp(const Vector& cost, std::span<const CuttingPlane> planes,
                               const Vector& center, double ml, const LpOptions& options) {
  const Index n = center.size();
  LpProblem lp;
  lp.cost = cost;
  lp.lower = (center.array() - ml).max(0.0).matrix();
  lp.upper = (center.array() + ml).min(1.0).matrix();

  std::vector<std::size_t> rows;
  for (std::size_t k = 0; k < planes.size(); ++k) {
    const CuttingPlane& plane = planes[k];
    if (!plane.active) continue;
    const double rhs = plane.gradient.dot(plane.point) - plane.value;
    double box_max = 0.0;
    for (Index i = 0; i < n; ++i)
      box_max += std::max(plane.gradient(i) * lp.lower(i), plane.gradient(i) * lp.upper(i));
    if (box_max <= rhs) continue;  // satisfied everywhere in the box
    rows.push_back(k);
  }
  lp.a.resize(static_cast<Index>(rows.size()), n);
  lp.b.resize(static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const CuttingPlane& plane = planes[rows[r]];
    lp.a.row(static_cast<Index>(r)) = plane.gradient.transpose();
    lp.b(static_cast<Index>(r)) = plane.gradient.dot(plane.point) - plane.value;
  }
  return solve_lp(lp, options);
}

SlpResult slp_solve(ResponseEvaluator& evaluator, std::span<const Index> working_set,
                    std::span<const Index> records, const Vector& x0, const SlpConfig& config,
                    long p_start, long q_start, int subproblem) {
  config.validate();
  if (working_set.empty()) throw std::invalid_argument("working set is empty");
  if (records.empty()) throw std::invalid_argument("no active ground motions");
  const Index nd = evaluator.model().n_dampers();
  if (x0.size() != nd) throw std::invalid_argument("initial design has the wrong size");

  std::vector<EvalTask> tasks;
  for (Index s : working_set)
    for (Index r : records) tasks.push_back({s, r});

  SlpResult result;
  const Vector cost = Vector::Ones(nd);
  Vector x = x0.cwiseMax(0.0).cwiseMin(1.0);
  Vector x_prev;
  long p = p_start;
  long q = q_start;

  bool have_feasible = false;
  Vector best_x;
  double best_cost = std::numeric_limits<double>::infinity();
  double best_g = 0.0;
  ConstraintParams best_params;

  for (int it = 1; it <= config.i_max; ++it) {
    const ConstraintParams params{p, q, config.quadrature};
    const std::vector<EvalOutcome> outcomes = evaluator.run(x, tasks, params, true);

    double max_g = -std::numeric_limits<double>::infinity();
    for (const EvalOutcome& o : outcomes) max_g = std::max(max_g, o.value.g);
    const double dx = x_prev.size() == 0 ? std::numeric_limits<double>::infinity()
                                         : (x - x_prev).norm();

    int active_count = 0;
    for (const CuttingPlane& plane : result.planes) active_count += plane.active ? 1 : 0;
    result.log.push_back({subproblem, it, x.sum(), max_g, dx, active_count, p, q});
    result.iterations = it;

    const bool feasible = max_g <= config.feasibility_tol;
    if (feasible && x.sum() <= best_cost) {
      have_feasible = true;
      best_x = x;
      best_cost = x.sum();
      best_g = max_g;
      best_params = params;
    }
    if (feasible && it >= config.i_min && dx < config.delta) {
      result.x = x;
      result.converged = true;
      result.max_g = max_g;
      result.params_used = params;
      break;
    }

    // Planes binding at the current iterate whose constraint is comfortably
    // satisfied there are cutting into the feasible region.
    for (CuttingPlane& plane : result.planes) {
      if (!plane.active || plane.predict(x) < -config.binding_tol) continue;
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        if (tasks[t].scenario != plane.scenario_id || tasks[t].record != plane.record_id) continue;
        const double g_true = outcomes[t].value.g;
        if (g_true < -config.drop_margin) {
          plane.active = false;
          plane.disabled_at = it;
          ++result.dropped_planes;
          result.worst_g_at_drop = std::max(result.worst_g_at_drop, g_true);
        }
        break;
      }
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
      CuttingPlane plane;
      plane.scenario_id = tasks[t].scenario;
      plane.record_id = tasks[t].record;
      plane.gradient = outcomes[t].gradient;
      plane.value = outcomes[t].value.g;
      plane.point = x;
      plane.born = it;
      result.planes.push_back(std::move(plane));
    }

    p = config.p_schedule.advance(p);
    q = config.q_schedule.advance(q);

    const LpResult lp = solve_move_limited_lp(cost, result.planes, x, config.ml);
    if (lp.status == LpStatus::infeasible) ++result.infeasible_lps;
    x_prev = x;
    x = lp.x;

    result.max_g = max_g;
    result.params_used = params;
  }

  if (!result.converged) {
    if (have_feasible) {
      result.x = best_x;
      result.max_g = best_g;
      result.params_used = best_params;
    } else {
      result.x = x_prev.size() ? x_prev : x;
    }
  }
  result.next_p = p;
  result.next_q = q;
  return result;
}

}  // namespace fsdamp
