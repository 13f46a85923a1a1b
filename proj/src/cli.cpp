#include "fsdamp/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fsdamp/failsafe.hpp"
#include "fsdamp/io.hpp"
#include "fsdamp/report.hpp"

namespace fsdamp {

namespace {

struct RunConfig {
  std::string model_path;
  std::vector<std::string> record_paths;
  std::string mode = "failsafe";
  Index complete_k = 1;
  Index partial_k = 2;
  double nu = 0.5;
  double c_bar = 150000.0;
  double ml = 0.02;
  int i_min = 50;
  int i_max = 1000;
  double epsilon = 0.05;
  ContinuationSchedule p_schedule;
  ContinuationSchedule q_schedule;
  std::string accel_units = "m/s2";
  std::string out_dir = "out";
  bool check_gradients = false;
  bool compare = false;
  bool export_drifts = false;
  std::string design_path;
  double fd_step = 1e-6;
  int threads = 0;
};

struct Inputs {
  StructuralModel model;
  std::vector<GroundMotion> ensemble;
  ScenarioSet scenarios;
};

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  in.model = parse_model(cfg.model_path);
  const AccelUnits units = cfg.accel_units == "g" ? AccelUnits::g : AccelUnits::m_per_s2;
  for (const auto& p : cfg.record_paths) in.ensemble.push_back(parse_ground_motion(p, units));
  try {
    in.scenarios = enumerate_scenarios(in.model.n_dampers(), cfg.complete_k, cfg.partial_k, cfg.nu);
  } catch (const std::exception& e) {
    throw InputError(std::string("scenario flags: ") + e.what());
  }
  return in;
}

FailsafeConfig make_config(const RunConfig& cfg, Index n_dampers) {
  FailsafeConfig fc(n_dampers);
  fc.slp = SlpConfig(n_dampers, cfg.ml);
  fc.slp.i_min = cfg.i_min;
  fc.slp.i_max = cfg.i_max;
  fc.slp.p_schedule = cfg.p_schedule;
  fc.slp.q_schedule = cfg.q_schedule;
  fc.c_bar = cfg.c_bar;
  fc.epsilon = cfg.epsilon;
  fc.threads = cfg.threads;
  try {
    fc.slp.validate();
  } catch (const std::exception& e) {
    throw InputError(std::string("optimizer flags: ") + e.what());
  }
  return fc;
}

Vector load_design(const RunConfig& cfg, Index n) {
  if (cfg.design_path.empty()) return Vector::Constant(n, 0.5);
  return parse_design_text(read_text_file(cfg.design_path), n, cfg.design_path);
}

std::string design_text(const Vector& x) {
  std::string out = "# normalized design, one value per damper\n";
  for (Index i = 0; i < x.size(); ++i) out += format_number(x(i)) + '\n';
  return out;
}

std::string gradient_check_csv(const Inputs& in, const Vector& x, double c_bar,
                               const ConstraintParams& params, double h) {
  std::string out = "scenario,record,damper,adjoint,finite_difference,relative_error\n";
  const GroundMotion& gm = in.ensemble.front();
  for (Index s = 0; s < static_cast<Index>(in.scenarios.size()); ++s) {
    const FailureScenario& sc = in.scenarios[s];
    const GradientResult r = adjoint_gradient(in.model, DesignVector{x, c_bar}, sc, gm, params);
    const double scale = std::max(r.gradient.lpNorm<Eigen::Infinity>(), 1e-300);
    for (Index k = 0; k < x.size(); ++k) {
      auto g_at = [&](double dx) {
        Vector xp = x;
        xp(k) += dx;
        const DesignVector d{xp, c_bar};
        const auto hist = newmark_solve(in.model, assemble_added_damping(in.model, d, sc), gm);
        return evaluate_constraint(hist, in.model, params).g;
      };
      const double fd = (g_at(h) - g_at(-h)) / (2.0 * h);
      out += std::to_string(s) + ',' + gm.name + ',' + std::to_string(k + 1) + ',' +
             format_number(r.gradient(k)) + ',' + format_number(fd) + ',' +
             format_number(std::abs(r.gradient(k) - fd) / scale) + '\n';
    }
  }
  return out;
}

std::string drift_exports(const Inputs& in, const Vector& x, double c_bar) {
  std::string out = drift_history_header(in.model.n_drifts());
  const DesignVector d{x, c_bar};
  for (Index s = 0; s < static_cast<Index>(in.scenarios.size()); ++s)
    for (const auto& gm : in.ensemble) {
      const auto h = newmark_solve(in.model, assemble_added_damping(in.model, d, in.scenarios[s]), gm);
      out += drift_history_rows(s, gm.name, h, in.model);
    }
  return out;
}

int run_simulate(const RunConfig& cfg, const Inputs& in, const std::filesystem::path& out) {
  const Vector x = load_design(cfg, in.model.n_dampers());
  write_text_file(out / "drifts.csv", drift_exports(in, x, cfg.c_bar));
  std::vector<Index> all;
  for (Index r = 0; r < static_cast<Index>(in.ensemble.size()); ++r) all.push_back(r);
  ResponseEvaluator ev(in.model, in.scenarios, in.ensemble, cfg.c_bar, {}, cfg.threads);
  const auto eval = evaluate_all(ev, x, all, ConstraintParams{cfg.p_schedule.start, cfg.q_schedule.start});
  write_text_file(out / "constraints.csv", report_constraints(eval, in.scenarios, in.ensemble));
  std::cout << "simulated " << in.scenarios.size() << " scenarios x " << in.ensemble.size()
            << " records; max g = " << format_number(eval.worst_g.maxCoeff()) << '\n';
  return kExitOk;
}

int run_check_gradients(const RunConfig& cfg, const Inputs& in, const std::filesystem::path& out) {
  const Vector x = load_design(cfg, in.model.n_dampers());
  const ConstraintParams params{cfg.p_schedule.start, cfg.q_schedule.start};
  const std::string csv = gradient_check_csv(in, x, cfg.c_bar, params, cfg.fd_step);
  write_text_file(out / "gradient_check.csv", csv);
  std::cout << "wrote " << (out / "gradient_check.csv").string() << '\n';
  return kExitOk;
}

FinalDesign optimize(const Inputs& in, const ScenarioSet& set, FailsafeConfig fc, bool full) {
  fc.full_set = full;
  return run_failsafe(in.model, set, in.ensemble, fc);
}

int run_optimization(const RunConfig& cfg, const Inputs& in, const std::filesystem::path& out) {
  const FailsafeConfig fc = make_config(cfg, in.model.n_dampers());
  const ScenarioSet basic_set = ScenarioSet::no_failure(in.model.n_dampers());
  const bool basic = cfg.mode == "basic";
  const FinalDesign main =
      optimize(in, basic ? basic_set : in.scenarios, fc, cfg.mode == "fullset");

  std::vector<DesignColumn> columns;
  std::optional<FinalDesign> extra_basic, extra_ws, extra_full;
  if (cfg.compare) {
    if (!basic) extra_basic = optimize(in, basic_set, fc, false);
    if (cfg.mode != "failsafe") extra_ws = optimize(in, in.scenarios, fc, false);
    if (cfg.mode != "fullset") extra_full = optimize(in, in.scenarios, fc, true);
  }
  auto pick = [&](const std::string& m, const std::optional<FinalDesign>& alt) -> const FinalDesign* {
    if (cfg.mode == m) return &main;
    return alt ? &*alt : nullptr;
  };
  if (const auto* d = pick("basic", extra_basic)) columns.push_back({"Basic", d->design.x});
  if (const auto* d = pick("failsafe", extra_ws)) columns.push_back({"Fail-safe(WS)", d->design.x});
  if (const auto* d = pick("fullset", extra_full)) columns.push_back({"Fail-safe(Full)", d->design.x});

  const TableArtifact table = report_design(columns, cfg.c_bar);
  write_text_file(out / "design_table.csv", table.csv);
  write_text_file(out / "design_table.txt", table.text);
  write_text_file(out / "design.txt", design_text(main.design.x));
  write_text_file(out / "iterations.csv", iteration_log_csv(main.log));
  write_text_file(out / "manifest.json", run_manifest_json(main, basic ? basic_set : in.scenarios,
                                                           in.ensemble, cfg.mode));

  // Constraint report over the full scenario set, including for the basic design.
  std::vector<Index> all;
  for (Index r = 0; r < static_cast<Index>(in.ensemble.size()); ++r) all.push_back(r);
  ResponseEvaluator ev(in.model, in.scenarios, in.ensemble, cfg.c_bar, fc.newmark, cfg.threads);
  const auto eval = evaluate_all(ev, main.design.x, all, main.final_params);
  write_text_file(out / "constraints.csv", report_constraints(eval, in.scenarios, in.ensemble));
  if (cfg.export_drifts) write_text_file(out / "drifts.csv", drift_exports(in, main.design.x, cfg.c_bar));
  if (cfg.check_gradients)
    write_text_file(out / "gradient_check.csv",
                    gradient_check_csv(in, main.design.x, cfg.c_bar, main.final_params, cfg.fd_step));

  std::cout << table.text;
  std::cout << "sub-problems: " << main.subproblems.size() << ", evaluations: " << main.eval_counter
            << ", max g (all scenarios, all records): " << format_number(eval.worst_g.maxCoeff())
            << '\n';
  if (!main.converged) {
    std::cerr << "optimization did not converge\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Minimum-cost fail-safe viscous damper distribution"};
  app.add_option("--model", cfg.model_path, "Structural model (JSON)")->required();
  app.add_option("--records", cfg.record_paths, "Ground-motion files")->required();
  app.add_option("--mode", cfg.mode)
      ->check(CLI::IsMember({"failsafe", "basic", "fullset", "check-gradients", "simulate"}));
  app.add_option("--complete-k", cfg.complete_k, "Size of complete-failure subsets (0 = none)");
  app.add_option("--partial-k", cfg.partial_k, "Size of partial-failure subsets (0 = none)");
  app.add_option("--nu", cfg.nu, "Residual capacity of partially failed dampers");
  app.add_option("--cbar", cfg.c_bar, "Maximum damping coefficient [kNs/m]");
  app.add_option("--ml", cfg.ml, "Move limit");
  app.add_option("--imin", cfg.i_min, "Minimum SLP iterations per sub-problem");
  app.add_option("--imax", cfg.i_max, "Maximum SLP iterations per sub-problem");
  app.add_option("--epsilon", cfg.epsilon, "Critical-scenario tolerance");
  app.add_option("--p-start", cfg.p_schedule.start);
  app.add_option("--p-step", cfg.p_schedule.step);
  app.add_option("--p-cap", cfg.p_schedule.cap);
  app.add_option("--q-start", cfg.q_schedule.start);
  app.add_option("--q-step", cfg.q_schedule.step);
  app.add_option("--q-cap", cfg.q_schedule.cap);
  app.add_option("--accel-units", cfg.accel_units)->check(CLI::IsMember({"g", "m/s2"}));
  app.add_option("--out", cfg.out_dir, "Output directory");
  app.add_flag("--check-gradients", cfg.check_gradients, "Finite-difference check at the result");
  app.add_flag("--compare", cfg.compare, "Also run the other modes for the design table");
  app.add_flag("--export-drifts", cfg.export_drifts, "Write drift histories of the result");
  app.add_option("--design", cfg.design_path, "Design file for simulate / check-gradients");
  app.add_option("--fd-step", cfg.fd_step, "Central-difference step");
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    const Inputs in = load_inputs(cfg);
    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);
    if (cfg.mode == "simulate") return run_simulate(cfg, in, out);
    if (cfg.mode == "check-gradients") return run_check_gradients(cfg, in, out);
    return run_optimization(cfg, in, out);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace fsdamp
