#include "brute.hpp"
#include "doctest.h"
#include "pmc/bnc.hpp"
#include "pmc/error.hpp"
#include "pmc/oracle.hpp"
#include "support.hpp"

using namespace pmc;

namespace {

SolveConfig quick(Formulation f) {
  SolveConfig c;
  c.formulation = f;
  c.heuristic_budget_s = 0.5;
  c.time_limit_s = 60.0;
  return c;
}

void check_trace(const SolveReport& r) {
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    const auto& a = r.trace[i - 1];
    const auto& b = r.trace[i];
    if (a.primal && b.primal) CHECK(*b.primal <= *a.primal);
    if (a.dual && b.dual) CHECK(*b.dual >= *a.dual);
  }
  for (const auto& e : r.trace)
    if (e.primal && e.dual) CHECK(*e.dual <= *e.primal);
}

}  // namespace

TEST_CASE("gap percent") {
  CHECK(gap_percent(50.0, 50.0) == 0.0);
  CHECK(*gap_percent(100.0, 90.0) == doctest::Approx(10.0));
  CHECK_FALSE(gap_percent(100.0, std::nullopt));
  CHECK_FALSE(gap_percent(0.0, 0.0));
}

TEST_CASE("cut set names") {
  CHECK(parse_cut_set("oddcycle") == CutSet::OddCycle);
  CHECK(std::string(to_string(CutSet::Both)) == "both");
  CHECK_THROWS_AS(parse_cut_set("all"), ParameterError);
}

TEST_CASE("small solves") {
  for (Formulation f : {Formulation::AF, Formulation::RF}) {
    const auto k3 = solve(make_instance("k3", ConflictGraph::complete(3), {1, 2, 3}, 2), quick(f));
    CHECK(k3.status == SolveStatus::Infeasible);
    CHECK_FALSE(k3.schedule);
    CHECK_FALSE(k3.primal);

    const auto ok = solve(make_instance("k3", ConflictGraph::complete(3), {1, 2, 3}, 3), quick(f));
    CHECK(ok.status == SolveStatus::Optimal);
    CHECK(ok.primal == 3);
    CHECK(ok.gap_pct == 0.0);
  }
}

TEST_CASE("solve matches brute force") {
  testing::Gen gen(301);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(2, 9);
    const auto inst = gen.instance(n, gen.real(0.1, 0.7), gen.integer(2, 3), 20);
    const auto truth = brute_force_makespan(inst);
    for (Formulation f : {Formulation::AF, Formulation::RF}) {
      auto cfg = quick(f);
      cfg.cuts = static_cast<CutSet>(trial % 4);
      cfg.heuristic_budget_s = trial % 3 == 0 ? 0.0 : 0.5;
      const auto r = solve(inst, cfg);
      if (truth) {
        REQUIRE(r.status == SolveStatus::Optimal);
        CHECK(r.primal == *truth);
        CHECK(r.dual == *truth);
        REQUIRE(r.schedule);
        CHECK(is_valid_schedule(inst, *r.schedule));
      } else {
        CHECK(r.status == SolveStatus::Infeasible);
      }
      check_trace(r);
    }
  }
}

TEST_CASE("symmetry breaking keeps optimal values") {
  testing::Gen gen(307);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = gen.instance(gen.integer(3, 8), gen.real(0.1, 0.6), gen.integer(2, 3), 15);
    const auto truth = brute_force_makespan(inst);
    for (Symmetry s : {Symmetry::LoadOrder, Symmetry::Label, Symmetry::LabelStrengthened}) {
      auto cfg = quick(Formulation::AF);
      cfg.symmetry = s;
      cfg.heuristic_budget_s = 0.0;
      const auto r = solve(inst, cfg);
      if (truth) {
        CHECK(r.primal == *truth);
      } else {
        CHECK(r.status == SolveStatus::Infeasible);
      }
    }
  }
}

TEST_CASE("infeasible exactly when the chromatic number exceeds m") {
  testing::Gen gen(311);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = gen.integer(2, 10);
    const auto inst = gen.instance(n, gen.real(0.3, 0.9), gen.integer(2, 4), 10);
    const auto r = solve(inst, quick(trial % 2 ? Formulation::AF : Formulation::RF));
    CHECK((r.status == SolveStatus::Infeasible) == (inst.m < testing::brute_chi(inst.graph)));
  }
}

TEST_CASE("root cuts never weaken the root bound") {
  testing::Gen gen(313);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.integer(6, 14);
    const auto inst = gen.instance(n, gen.real(0.3, 0.8), 3, 20);
    auto with = quick(Formulation::RF);
    with.heuristic_budget_s = 0.0;
    with.node_limit = 1;
    with.ordering = VertexOrdering::identity(n);
    auto without = with;
    without.cuts = CutSet::None;
    const auto a = solve(inst, with);
    const auto b = solve(inst, without);
    if (a.nodes == 0 || b.nodes == 0) continue;
    CHECK(a.root_lp >= b.root_lp - 1e-7);
    CHECK(a.root_lp_before_cuts == doctest::Approx(b.root_lp));
  }
}

TEST_CASE("determinism and limits") {
  const auto inst = gen_erdos_renyi(14, 0.4, named_interval('b'), 4, 5);
  auto cfg = quick(Formulation::RF);
  cfg.cuts = CutSet::Both;
  const auto a = solve(inst, cfg);
  const auto b = solve(inst, cfg);
  CHECK(a.primal == b.primal);
  CHECK(a.dual == b.dual);
  CHECK(a.nodes == b.nodes);
  CHECK(a.cuts_by_class == b.cuts_by_class);
  CHECK(a.schedule->machine == b.schedule->machine);

  auto limited = cfg;
  limited.time_limit_s = 0.0;
  limited.heuristic_budget_s = 0.0;
  const auto none = solve(inst, limited);
  CHECK(none.status == SolveStatus::Unknown);
  CHECK_FALSE(none.primal);

  const auto text = format_report(a);
  CHECK(text.find("status: optimal") != std::string::npos);
}
