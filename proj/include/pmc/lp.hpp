#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pmc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { Le, Ge, Eq };

/// Sparse row: sum coef[k] * x[index[k]] (sense) rhs.
struct Row {
  std::vector<int> index;
  std::vector<double> coef;
  Sense sense = Sense::Le;
  double rhs = 0.0;

  double activity(std::span<const double> x) const;
  /// Amount by which x violates the row; zero when satisfied.
  double violation(std::span<const double> x) const;
};

/// Minimization LP with bounded variables.
class LinearProgram {
 public:
  int add_variable(double lo, double hi, double cost);

  /// Drops zero coefficients. Throws ParameterError on an index out of range,
  /// a repeated index or a non-finite coefficient or rhs.
  int add_row(Row row);

  void set_bounds(int j, double lo, double hi);
  void set_cost(int j, double c) { cost_[j] = c; }
  void truncate_rows(int count);

  int variables() const noexcept { return static_cast<int>(lo_.size()); }
  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  double lower(int j) const { return lo_[j]; }
  double upper(int j) const { return hi_[j]; }
  double cost(int j) const { return cost_[j]; }
  const Row& row(int i) const { return rows_[i]; }
  const std::vector<Row>& row_list() const noexcept { return rows_; }
  std::size_t nonzeros() const noexcept;

  double objective(std::span<const double> x) const;
  /// Largest violation over rows and bounds.
  double max_violation(std::span<const double> x) const;

 private:
  std::vector<double> lo_, hi_, cost_;
  std::vector<Row> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus s);

enum class VarStatus : std::uint8_t { Basic, AtLower, AtUpper, Free };

/// Status of every structural column followed by every row logical. A basis
/// taken from an LP with fewer rows is extended with basic logicals.
struct Basis {
  std::vector<VarStatus> status;
  int structurals = 0;

  bool empty() const noexcept { return status.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = kInf;
  std::vector<double> x;
  Basis basis;
  long iterations = 0;
};

struct LpTolerances {
  double primal = 1e-7;
  double dual = 1e-7;
  double pivot = 1e-9;
};

/// Backend interface; callers never depend on a concrete solver.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const LinearProgram& lp, const Basis* warm = nullptr) = 0;
  virtual std::string name() const = 0;
};

/// Bounded-variable primal and dual revised simplex over a sparse LU
/// factorization with product-form updates. Switches to Bland's rule after
/// 10 * (rows + cols) iterations of a phase and throws SolverFailure when a
/// hard iteration cap is hit or the basis cannot be repaired.
class RevisedSimplex final : public LpSolver {
 public:
  explicit RevisedSimplex(LpTolerances tol = {}, int refactor_interval = 100)
      : tol_(tol), refactor_interval_(refactor_interval) {}

  LpSolution solve(const LinearProgram& lp, const Basis* warm = nullptr) override;
  std::string name() const override { return "revised"; }

 private:
  LpTolerances tol_;
  int refactor_interval_;
};

/// Dense two-phase tableau simplex with Bland's rule. Slow but simple; used
/// to cross-check the default backend on small LPs. Ignores warm starts.
class TableauSimplex final : public LpSolver {
 public:
  explicit TableauSimplex(double tol = 1e-9) : tol_(tol) {}

  LpSolution solve(const LinearProgram& lp, const Basis* warm = nullptr) override;
  std::string name() const override { return "tableau"; }

 private:
  double tol_;
};

enum class LpBackend { Revised, Tableau };
std::unique_ptr<LpSolver> make_lp_solver(LpBackend backend);

/// Solves with the default backend.
LpSolution solve_lp(const LinearProgram& lp);

/// Appends `row` to `lp` and re-solves from the basis of `previous`.
LpSolution add_row_and_resolve(LinearProgram& lp, Row row, const LpSolution& previous);

/// Fixed-format MPS. `integer` marks columns wrapped in MARKER INTORG/INTEND
/// blocks; it may be empty. Columns are named C1.., rows R1.., objective OBJ.
void write_mps(std::ostream& out, const LinearProgram& lp, std::span<const char> integer = {},
               const std::string& name = "PMC");

}  // namespace pmc
