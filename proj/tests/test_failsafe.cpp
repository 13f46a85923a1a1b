#include "doctest.h"
#include "fsdamp/failsafe.hpp"
#include "support.hpp"

using namespace fsdamp;
using namespace fsdamp::testing;

TEST_CASE("critical scenario selection") {
  const Vector g = (Vector(5) << 0.10, 0.098, 0.02, 0.096, -0.3).finished();
  const std::vector<Index> none;
  CHECK(select_critical(g, none, 0.05) == std::vector<Index>{0, 1, 3});
  CHECK(select_critical(g, none, 0.0) == std::vector<Index>{0});
  const std::vector<Index> ws{0};
  CHECK(select_critical(g, ws, 0.05) == std::vector<Index>{1, 3});
  CHECK(select_critical(g, none, 0.9) == std::vector<Index>{0, 1, 2, 3});
  const Vector ok = (Vector(2) << -0.1, 0.0).finished();
  CHECK_THROWS_AS(select_critical(ok, none, 0.05), std::logic_error);
}

TEST_CASE("all scenarios coincide for the zero design") {
  const StructuralModel m = four_story_frame();
  const std::vector<GroundMotion> ens = frame_records(2, 3.0);
  const ScenarioSet set = enumerate_scenarios(4, 1, 2, 0.5);
  ResponseEvaluator ev(m, set, ens, kFrameCbar);
  const std::vector<Index> recs{0, 1};
  const ScenarioEvaluation e = evaluate_all(ev, Vector::Zero(4), recs, {100, 100});
  CHECK(e.g.rows() == 11);
  for (Index s = 1; s < 11; ++s) CHECK((e.g.row(s) - e.g.row(0)).norm() == 0.0);
  CHECK(ev.evaluations() == 22);
}

TEST_CASE("sixteen-damper scenario set is evaluated in full") {
  // Sixteen single-story dampers in parallel on a two-story frame.
  StructuralModel m = make_shear_frame({{10.0, 8.0}, {4000.0, 3000.0}, 0.05, 0.01});
  m.damper_transforms.clear();
  for (int k = 0; k < 16; ++k) m.damper_transforms.push_back(m.drift_transform.row(k % 2));
  const ScenarioSet set = enumerate_scenarios(16, 1, 2, 0.5);
  const std::vector<GroundMotion> ens{short_record(50)};
  ResponseEvaluator ev(m, set, ens, 5.0);
  const std::vector<Index> recs{0};
  const ScenarioEvaluation e = evaluate_all(ev, Vector::Constant(16, 0.5), recs, {8, 8});
  CHECK(e.worst_g.size() == 137);
  CHECK(e.violated(-10.0).size() == 137);
}

TEST_CASE("working-set run expands and ends with every scenario satisfied") {
  const StructuralModel m = four_story_frame();
  const std::vector<GroundMotion> ens = frame_records(2, 6.0);
  const ScenarioSet set = enumerate_scenarios(4, 1, 2, 0.5);
  const FailsafeConfig cfg(4);
  FailsafeConfig c = cfg;
  c.c_bar = kFrameCbar;
  const FinalDesign r = run_failsafe(m, set, ens, c);
  REQUIRE(r.converged);
  REQUIRE(!r.subproblems.empty());
  CHECK(r.subproblems.front().working_set == std::vector<Index>{0});
  for (std::size_t k = 1; k < r.subproblems.size(); ++k) {
    const auto& prev = r.subproblems[k - 1];
    const auto& cur = r.subproblems[k];
    const bool grew = cur.working_set.size() > prev.working_set.size() ||
                      cur.records.size() > prev.records.size();
    CHECK(grew);
    CHECK(std::includes(cur.working_set.begin(), cur.working_set.end(), prev.working_set.begin(),
                        prev.working_set.end()));
  }
  CHECK(r.final_check.g.rows() == 11);
  CHECK(r.final_check.g.cols() == 2);
  CHECK(r.final_check.violated(c.slp.feasibility_tol).empty());
  CHECK(r.eval_counter > 0);
}

TEST_CASE("run_failsafe validates its inputs") {
  const StructuralModel m = four_story_frame();
  const std::vector<GroundMotion> none;
  const ScenarioSet set = enumerate_scenarios(4, 1, 0, 0.5);
  CHECK_THROWS_AS(run_failsafe(m, set, none, FailsafeConfig(4)), std::invalid_argument);
  const std::vector<GroundMotion> ens = frame_records(1, 1.0);
  CHECK_THROWS_AS(run_failsafe(m, enumerate_scenarios(3, 1, 0, 0.5), ens, FailsafeConfig(4)),
                  std::invalid_argument);
}

TEST_CASE("record loop adds a record the first design fails") {
  // Low-frequency record dominates at the fundamental period; the strong
  // high-frequency one is only caught by the all-record check.
  const StructuralModel m = four_story_frame();
  std::vector<GroundMotion> ens;
  SyntheticRecordSpec low;
  low.name = "low";
  low.f_low = 0.8;
  low.f_high = 2.0;
  low.pga = 1.5;
  low.duration = 8.0;
  low.decay_start = 5.0;
  low.seed = 3;
  SyntheticRecordSpec high = low;
  high.name = "high";
  high.f_low = 3.0;
  high.f_high = 6.0;
  high.pga = 10.0;
  high.seed = 4;
  ens.push_back(make_synthetic_record(low));
  ens.push_back(make_synthetic_record(high));

  FailsafeConfig c(4);
  c.c_bar = kFrameCbar;
  const FinalDesign r = run_failsafe(m, enumerate_scenarios(4, 1, 2, 0.5), ens, c);
  REQUIRE(r.converged);
  CHECK(r.dominant_record == 0);
  CHECK(r.subproblems.front().records == std::vector<Index>{0});
  CHECK(r.active_records == std::vector<Index>{0, 1});
  CHECK(r.subproblems.back().pass == 1);
  CHECK(r.final_check.violated(c.slp.feasibility_tol).empty());
}
