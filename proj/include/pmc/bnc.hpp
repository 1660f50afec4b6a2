#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmc/cuts.hpp"
#include "pmc/formulations.hpp"

namespace pmc {

enum class CutSet { None, Clique, OddCycle, Both };
const char* to_string(CutSet c);
/// Accepts none, clique, oddcycle, both. Throws ParameterError.
CutSet parse_cut_set(std::string_view text);

struct SolveConfig {
  Formulation formulation = Formulation::RF;
  CutSet cuts = CutSet::Clique;
  bool root_only = true;
  double density_threshold = 0.3;
  double time_limit_s = 840.0;
  double heuristic_budget_s = 5.0;
  std::uint64_t seed = 0;
  Symmetry symmetry = Symmetry::None;     // AF only
  std::optional<VertexOrdering> ordering;  // RF; clique_distance_ordering(graph, seed) when empty
  int max_rounds = 20;
  int max_cuts_per_round = 50;
  std::int64_t node_limit = -1;  // negative: unlimited
  LpBackend backend = LpBackend::Revised;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Unknown };
const char* to_string(SolveStatus s);

struct BoundEvent {
  double time_s = 0.0;
  std::optional<Time> primal;
  std::optional<Time> dual;
};

inline constexpr std::size_t kCutClasses = 5;

struct SolveReport {
  std::string instance;
  SolveStatus status = SolveStatus::Unknown;
  std::optional<Time> primal;
  std::optional<Time> dual;
  std::optional<double> gap_pct;
  std::int64_t nodes = 0;
  std::array<int, kCutClasses> cuts_by_class{};  ///< indexed by CutClass
  int cut_rounds = 0;
  bool inexact_separation = false;  ///< some clique search fell back to greedy
  double root_lp = 0.0;             ///< root LP value after the cut loop
  double root_lp_before_cuts = 0.0;
  std::int64_t lp_iterations = 0;
  double time_s = 0.0;
  std::optional<Schedule> schedule;
  Formulation formulation = Formulation::RF;
  CutSet cuts = CutSet::Clique;
  std::uint64_t seed = 0;
  std::vector<BoundEvent> trace;  ///< every change of either bound, in order

  int cuts_added() const;
};

/// Branch and cut over AF or RF. Throws SolverFailure when the LP backend
/// fails on the root relaxation.
SolveReport solve(const Instance& inst, const SolveConfig& config = {});

/// 100 (primal - dual) / primal; nullopt when a bound is missing or
/// primal is not positive.
std::optional<double> gap_percent(std::optional<double> primal, std::optional<double> dual);

/// Human-readable multi-line summary.
std::string format_report(const SolveReport& report);

}  // namespace pmc
