#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pmc/formulations.hpp"

namespace pmc {

/// Optimal makespan by exhaustive search, or nullopt when no proper
/// assignment to m machines exists. Requires n <= 12.
std::optional<Time> brute_force_makespan(const Instance& inst);

/// Visits integer points over the model's columns; return false to stop.
using PointVisitor = std::function<bool(const std::vector<double>&)>;

/// Every 0/1 point of the model's feasible set, with the makespan column at
/// its least feasible value. RF: the machine-count row is not imposed. AF:
/// symmetry rows and fixed bounds are honoured. Requires n <= 10.
void enumerate_model_points(const MilpModel& model, const PointVisitor& visit);

/// Searches for a point of enumerate_model_points violating `cut` by more
/// than tol, pruning on the cut's coefficient bounds.
std::optional<std::vector<double>> find_violating_point(const MilpModel& model, const Row& cut,
                                                        double tol = 1e-9);

struct RfPoint {
  std::vector<int> x;  ///< build_rf column order, makespan column excluded
  Time y = 0;          ///< least makespan compatible with x
};

/// All integer points of the relaxed representatives polytope for
/// (inst, ord). Requires n <= 8.
std::vector<RfPoint> enumerate_rf_points(const Instance& inst, const VertexOrdering& ord);

/// Incremental affine hull over exact rationals.
class AffineHull {
 public:
  explicit AffineHull(int dimension);
  ~AffineHull();
  AffineHull(AffineHull&&) noexcept;
  AffineHull& operator=(AffineHull&&) noexcept;

  /// Returns true when the point raised the dimension.
  bool add(std::span<const std::int64_t> point);
  /// -1 while empty.
  int dimension() const;
  int ambient() const { return ambient_; }

 private:
  struct Impl;
  int ambient_;
  std::unique_ptr<Impl> impl_;
};

/// Affine dimension of a finite point set. Throws ParameterError if empty.
int affine_dimension(const std::vector<std::vector<std::int64_t>>& points);

/// Affine dimension of the RF points (x, y*) and (x, y*+1), optionally
/// restricted to points accepted by `keep`. Stops once full-dimensional.
/// Returns -1 when no point is kept.
int rf_polytope_dimension(const Instance& inst, const VertexOrdering& ord,
                          const std::function<bool(const RfPoint&)>& keep = {});

struct OddCycle {
  std::vector<Vertex> vertices;  ///< indices into the subgraph, sorted
  double violation = 0.0;        ///< sum x - (|U|-1)/2 gamma
};

/// Maximum-violation odd-cycle inequality over every odd vertex set that
/// spans a cycle of `sub`; nullopt when sub is bipartite. Requires at most
/// 9 vertices.
std::optional<OddCycle> most_violated_odd_cycle(const ConflictGraph& sub, std::span<const double> x,
                                                double gamma);

}  // namespace pmc
