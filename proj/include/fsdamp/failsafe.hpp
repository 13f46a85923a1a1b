#pragma once

#include <span>
#include <vector>

#include "fsdamp/optimizer.hpp"

namespace fsdamp {

struct FailsafeConfig {
  explicit FailsafeConfig(Index n_dampers = 1) : slp(n_dampers) {}

  SlpConfig slp;
  double c_bar = 150000.0;
  double epsilon = 0.05;
  double x0 = 0.5;
  // Every scenario in the working set from the start (reference mode).
  bool full_set = false;
  int max_subproblems = 50;
  int max_record_passes = 10;
  // Damping ratio of the oscillator used to rank records.
  double spectral_zeta = 0.05;
  NewmarkParams newmark;
  int threads = 0;
};

/// Bookkeeping of the expanding working-set loop.
struct WorkingSetState {
  std::vector<Index> working_set;  // sorted scenario ids
  int k = 0;
  Vector x;
  std::vector<Index> violated;
  std::vector<Index> candidates;
  double epsilon = 0.05;
  long eval_counter = 0;
};

/// Constraint values of every scenario under a list of records.
struct ScenarioEvaluation {
  std::vector<Index> records;  // column order of `g` and `peak`
  Matrix g;                    // scenarios x records
  Matrix peak;                 // exact normalized peaks, same layout
  Vector worst_g;              // max over records per scenario

  std::vector<Index> violated(double tol) const;
};

ScenarioEvaluation evaluate_all(ResponseEvaluator& evaluator, const Vector& x,
                                std::span<const Index> records, const ConstraintParams& params);

/// Scenarios outside `working_set` whose constraint is within relative
/// `epsilon` of the largest one. Requires max(g) > 0.
std::vector<Index> select_critical(const Vector& g, std::span<const Index> working_set,
                                   double epsilon);

struct SubproblemRecord {
  int pass = 0;   // record-loop pass
  int index = 0;  // sub-problem counter k, global over passes
  std::vector<Index> working_set;
  std::vector<Index> records;
  int iterations = 0;
  bool converged = false;
  double cost = 0.0;
  double max_g = 0.0;
  long p = 0;
  long q = 0;
  int dropped_planes = 0;
  int infeasible_lps = 0;
};

struct FinalDesign {
  DesignVector design;
  bool converged = false;
  std::vector<SubproblemRecord> subproblems;
  std::vector<Index> active_records;
  Index dominant_record = 0;
  double fundamental_period = 0.0;
  long eval_counter = 0;
  ConstraintParams final_params;
  ScenarioEvaluation final_check;  // all scenarios under every ensemble record
  std::vector<IterationRecord> log;
  double wall_seconds = 0.0;
};

/// Working-set fail-safe optimization with the outer ground-motion loop.
/// Starts from the record with the largest spectral displacement at the bare
/// structure's fundamental period, solves sub-problems until no scenario is
/// violated, then re-checks every record and repeats with the violated ones
/// added until all records pass.
FinalDesign run_failsafe(const StructuralModel& model, const ScenarioSet& scenarios,
                         std::span<const GroundMotion> ensemble, const FailsafeConfig& config);

}  // namespace fsdamp
