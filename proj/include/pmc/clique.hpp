#pragma once

#include <span>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

struct WeightedClique {
  std::vector<Vertex> vertices;
  double weight = 0.0;
  bool exact = true;  ///< false when the greedy fallback was used
};

/// Maximum-weight clique of g restricted to `candidates`, with weight[v] per
/// vertex of g. Non-positive weights never improve a clique and are skipped.
/// Exact branch-and-bound with a coloring bound while at most `exact_limit`
/// candidates carry positive weight; greedy otherwise.
WeightedClique max_weight_clique(const ConflictGraph& g, std::span<const Vertex> candidates,
                                 std::span<const double> weight, int exact_limit = 64);

/// Extends `clique` to an inclusion-maximal clique within `candidates`,
/// preferring heavier vertices, then smaller labels.
void extend_to_maximal(const ConflictGraph& g, std::vector<Vertex>& clique,
                       std::span<const Vertex> candidates, std::span<const double> weight);

}  // namespace pmc
