#pragma once

#include <span>
#include <string>
#include <vector>

#include "fsdamp/failsafe.hpp"

namespace fsdamp {

struct DesignColumn {
  std::string label;
  Vector x;  // normalized design
};

struct TableArtifact {
  std::string csv;
  std::string text;  // aligned, for terminals
};

/// Per-damper coefficients c_bar * x_i in kNs/m, one column per design, then
/// J as the coefficient sum in kNs/m and as the dimensionless sum of x.
TableArtifact report_design(std::span<const DesignColumn> columns, double c_bar);

/// One row per (scenario, record): g, exact normalized peak and the 1.0 threshold.
std::string report_constraints(const ScenarioEvaluation& evaluation, const ScenarioSet& scenarios,
                               std::span<const GroundMotion> ensemble);

/// Long-format drift history, columns scenario, record, time, d1..dn [m].
std::string drift_history_header(Index n_drifts);
std::string drift_history_rows(Index scenario_id, const std::string& record,
                               const ResponseHistory& history, const StructuralModel& model);

std::string iteration_log_csv(std::span<const IterationRecord> log);

std::string run_manifest_json(const FinalDesign& result, const ScenarioSet& scenarios,
                              std::span<const GroundMotion> ensemble, const std::string& mode);

/// Shortest round-trip decimal form used in every artifact.
std::string format_number(double v);

}  // namespace fsdamp
