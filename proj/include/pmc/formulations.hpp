#pragma once

#include <string>
#include <vector>

#include "pmc/graph.hpp"
#include "pmc/instance.hpp"
#include "pmc/lp.hpp"

namespace pmc {

enum class Formulation { AF, RF };
const char* to_string(Formulation f);

/// Semantic meaning of a model column.
/// AF: x[a][b] is job a on machine b. RF: x[a][b] is job b represented by a.
struct VarKey {
  enum class Kind : char { Assign, Represent, Makespan } kind = Kind::Makespan;
  int a = -1;
  int b = -1;

  friend bool operator==(const VarKey&, const VarKey&) = default;
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};
std::string to_string(const VarKey& key);

enum class RowClass : char {
  Assign,       // AF: job covered by some machine
  Conflict,     // AF: edge on one machine
  Load,         // AF and RF: machine load bounded by the makespan
  Machines,     // RF: number of non-source representatives
  Cover,        // RF: non-source job represented
  Clique,       // RF: K in K(v) below the representative
  SymLoad,      // AF: machines sorted by load
  SymLabel,     // AF: machine k opened by a smaller label
  Cut,          // appended by separation
};

struct MilpModel {
  Formulation kind = Formulation::AF;
  Instance instance;
  LinearProgram lp;
  std::vector<char> integer;
  std::vector<VarKey> keys;
  std::vector<RowClass> row_class;
  int makespan = -1;

  // RF only.
  VertexOrdering ordering;
  AntiNeighborhoods anti;

  /// Column of x[a][b], or -1 when the model has no such variable.
  int var(int a, int b) const {
    const int width = kind == Formulation::AF ? instance.m : instance.jobs();
    return lookup_[static_cast<std::size_t>(a) * width + b];
  }
  /// RF: column of x_vv, or -1 for a source (whose x_vv is fixed to 1).
  int gamma(Vertex v) const { return var(v, v); }

  int add_variable(VarKey key, double lo, double hi, double cost, bool is_integer);
  int add_row(Row row, RowClass cls);

 private:
  friend MilpModel build_af(const Instance&);
  friend MilpModel build_rf(const Instance&, const VertexOrdering&);
  std::vector<int> lookup_;
};

/// Values indexed by model column.
struct FractionalPoint {
  std::vector<double> values;
  double objective = 0.0;
};

MilpModel build_af(const Instance& inst);

enum class Symmetry { None, LoadOrder, Label, LabelStrengthened };
const char* to_string(Symmetry s);

/// Throws WrongKind for an RF model.
MilpModel add_symmetry_breaking(MilpModel model, Symmetry variant);

MilpModel build_rf(const Instance& inst, const VertexOrdering& ord);

/// Optimal value of the LP relaxation; +infinity when the relaxation is
/// infeasible. Throws SolverFailure if the backend fails.
double lp_root_bound(const MilpModel& model);

/// Converts an integral feasible point into a schedule. Throws
/// ExtractionError when the point is fractional or violates a row.
Schedule extract_schedule(const MilpModel& model, const FractionalPoint& point);

inline constexpr double kIntegralityTol = 1e-6;

}  // namespace pmc
