#pragma once

#include <cstdint>
#include <optional>

#include "pmc/graph.hpp"
#include "pmc/instance.hpp"

namespace pmc {

struct Coloring {
  std::vector<int> color;  ///< 0-based color of each vertex, in [0, k)
  int k = 0;
};

bool is_proper_coloring(const ConflictGraph& g, const Coloring& c);

/// Picks the uncolored vertex of largest saturation, then largest degree,
/// then smallest label, and gives it the smallest free color.
Coloring dsatur(const ConflictGraph& g);

enum class Colorability { Yes, No, Unknown };

struct ColorabilityResult {
  Colorability verdict = Colorability::Unknown;
  std::optional<Coloring> coloring;  ///< set when verdict is Yes
  std::int64_t nodes = 0;
};

/// Exact test for a proper coloring with at most k colors: DSATUR
/// backtracking from a precolored maximal clique. Unknown once node_limit
/// search nodes or budget_s seconds are spent.
ColorabilityResult k_colorable(const ConflictGraph& g, int k, std::int64_t node_limit = 2'000'000,
                               double budget_s = 5.0);

/// Longest job first onto the least-loaded conflict-free machine. With a
/// coloring of at most m colors the result is never empty: when the greedy
/// pass fails the color classes are used as machines, and the better of
/// the two schedules is returned. nullopt means the heuristic failed.
std::optional<Schedule> list_schedule(const Instance& inst, const std::optional<Coloring>& coloring = {});

/// First-improvement descent over single moves off a critical machine and
/// swaps involving a critical machine, ordered by (makespan, number of
/// critical machines). Stops at a local optimum or after budget_s seconds.
Schedule local_search(const Instance& inst, Schedule start, double budget_s);

struct WarmStartOptions {
  double budget_s = 5.0;
  std::uint64_t seed = 0;
  int restarts = 64;  ///< randomized list-scheduling passes after the first
  std::int64_t coloring_nodes = 2'000'000;
};

struct WarmStart {
  std::optional<Schedule> schedule;
  /// No means the instance is proven infeasible.
  Colorability feasible = Colorability::Unknown;
};

/// dsatur -> list_schedule -> local_search, plus seeded restarts, within the
/// budget. When DSATUR needs more than m colors an exact colorability test
/// runs first. Stops early once the trivial lower bound is reached.
WarmStart warm_start_search(const Instance& inst, const WarmStartOptions& options = {});

/// The schedule part of warm_start_search.
std::optional<Schedule> warm_start(const Instance& inst, const WarmStartOptions& options = {});

}  // namespace pmc
