#include "fsdamp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace fsdamp {

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << (v == 0.0 ? 0.0 : v);
  return s.str();
}

const char* kind_name(FailureScenario::Kind k) {
  switch (k) {
    case FailureScenario::Kind::none: return "none";
    case FailureScenario::Kind::complete: return "complete";
    case FailureScenario::Kind::partial: return "partial";
  }
  return "?";
}

std::string damaged_list(const FailureScenario& s) {
  std::string out;
  for (Index d : s.damaged) {
    if (!out.empty()) out += ';';
    out += std::to_string(d + 1);
  }
  return out;
}

}  // namespace

TableArtifact report_design(std::span<const DesignColumn> columns, double c_bar) {
  Index n = 0;
  for (const auto& c : columns) n = std::max(n, c.x.size());

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"Location"};
  for (const auto& c : columns) head.push_back(c.label);
  rows.push_back(head);
  for (Index i = 0; i < n; ++i) {
    std::vector<std::string> r{std::to_string(i + 1)};
    for (const auto& c : columns) r.push_back(i < c.x.size() ? fixed(c_bar * c.x(i), 1) : "");
    rows.push_back(r);
  }
  std::vector<std::string> j_phys{"J [kNs/m]"};
  std::vector<std::string> j_norm{"J normalized"};
  for (const auto& c : columns) {
    j_phys.push_back(fixed(c_bar * c.x.sum(), 1));
    j_norm.push_back(fixed(c.x.sum(), 6));
  }
  rows.push_back(j_phys);
  rows.push_back(j_norm);

  TableArtifact out;
  const std::string note = "# damping coefficients c_i = c_bar * x_i in kNs/m, c_bar = " +
                           format_number(c_bar) + "; J [kNs/m] = sum c_i, J normalized = sum x_i\n";
  out.csv = note;
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out.csv += (k ? "," : "") + r[k];
    out.csv += '\n';
  }

  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  out.text = note;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const std::string pad(width[k] - r[k].size(), ' ');
      line += k == 0 ? r[k] + pad : "  " + pad + r[k];
    }
    out.text += line + '\n';
  }
  return out;
}

std::string report_constraints(const ScenarioEvaluation& evaluation, const ScenarioSet& scenarios,
                               std::span<const GroundMotion> ensemble) {
  std::string out = "scenario,kind,damaged,nu,record,g,normalized_peak,threshold\n";
  for (Index s = 0; s < evaluation.g.rows(); ++s) {
    const FailureScenario& sc = scenarios[s];
    for (Index c = 0; c < evaluation.g.cols(); ++c) {
      const Index r = evaluation.records[static_cast<std::size_t>(c)];
      out += std::to_string(sc.id) + ',' + kind_name(sc.kind) + ',' + damaged_list(sc) + ',' +
             format_number(sc.kind == FailureScenario::Kind::none ? 1.0 : sc.nu) + ',' +
             ensemble[static_cast<std::size_t>(r)].name + ',' + format_number(evaluation.g(s, c)) +
             ',' + format_number(evaluation.peak(s, c)) + ",1\n";
    }
  }
  return out;
}

std::string drift_history_header(Index n_drifts) {
  std::string out = "scenario,record,time";
  for (Index j = 0; j < n_drifts; ++j) out += ",d" + std::to_string(j + 1);
  return out + '\n';
}

std::string drift_history_rows(Index scenario_id, const std::string& record,
                               const ResponseHistory& history, const StructuralModel& model) {
  const Matrix d = model.drift_transform * history.u;
  std::string out;
  for (Index i = 0; i < d.cols(); ++i) {
    out += std::to_string(scenario_id) + ',' + record + ',' +
           format_number(history.dt * static_cast<double>(i));
    for (Index j = 0; j < d.rows(); ++j) out += ',' + format_number(d(j, i));
    out += '\n';
  }
  return out;
}

std::string iteration_log_csv(std::span<const IterationRecord> log) {
  std::string out = "subproblem,iteration,cost,max_g,dx,active_planes,p,q\n";
  for (const auto& r : log) {
    out += std::to_string(r.subproblem) + ',' + std::to_string(r.iteration) + ',' +
           format_number(r.cost) + ',' + format_number(r.max_g) + ',' +
           (std::isfinite(r.dx) ? format_number(r.dx) : std::string("inf")) + ',' +
           std::to_string(r.active_planes) + ',' + std::to_string(r.p) + ',' +
           std::to_string(r.q) + '\n';
  }
  return out;
}

std::string run_manifest_json(const FinalDesign& result, const ScenarioSet& scenarios,
                              std::span<const GroundMotion> ensemble, const std::string& mode) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["mode"] = mode;
  j["converged"] = result.converged;
  j["n_dampers"] = scenarios.n_dampers;
  j["scenarios"] = {{"total", scenarios.size()},
                    {"complete", scenarios.n_complete},
                    {"partial", scenarios.n_partial}};
  ordered_json recs = ordered_json::array();
  for (const auto& gm : ensemble) recs.push_back(gm.name);
  j["records"] = recs;
  j["fundamental_period"] = result.fundamental_period;
  j["dominant_record"] = ensemble[static_cast<std::size_t>(result.dominant_record)].name;
  ordered_json subs = ordered_json::array();
  for (const auto& s : result.subproblems) {
    subs.push_back({{"pass", s.pass},
                    {"index", s.index},
                    {"working_set", s.working_set},
                    {"records", s.records},
                    {"iterations", s.iterations},
                    {"converged", s.converged},
                    {"cost", s.cost},
                    {"max_g", s.max_g},
                    {"p", s.p},
                    {"q", s.q},
                    {"dropped_planes", s.dropped_planes},
                    {"infeasible_lps", s.infeasible_lps}});
  }
  j["subproblems"] = subs;
  j["eval_counter"] = result.eval_counter;
  j["final_p"] = result.final_params.p;
  j["final_q"] = result.final_params.q;
  j["cost"] = result.design.x.sum();
  std::vector<double> x(result.design.x.data(), result.design.x.data() + result.design.x.size());
  j["x"] = x;
  if (result.final_check.worst_g.size() > 0) j["max_g_all"] = result.final_check.worst_g.maxCoeff();
  j["wall_seconds"] = result.wall_seconds;
  return j.dump(2) + '\n';
}

}  // namespace fsdamp
