#include "pmc/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "pmc/error.hpp"

namespace pmc {

double Row::activity(std::span<const double> x) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < index.size(); ++k) sum += coef[k] * x[index[k]];
  return sum;
}

double Row::violation(std::span<const double> x) const {
  const double a = activity(x);
  switch (sense) {
    case Sense::Le: return std::max(0.0, a - rhs);
    case Sense::Ge: return std::max(0.0, rhs - a);
    case Sense::Eq: return std::abs(a - rhs);
  }
  return 0.0;
}

int LinearProgram::add_variable(double lo, double hi, double cost) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
    throw ParameterError("invalid variable bounds");
  }
  lo_.push_back(lo);
  hi_.push_back(hi);
  cost_.push_back(cost);
  return variables() - 1;
}

int LinearProgram::add_row(Row row) {
  if (row.index.size() != row.coef.size()) throw ParameterError("row index/coefficient size mismatch");
  if (!std::isfinite(row.rhs)) throw ParameterError("row rhs must be finite");
  std::vector<char> seen(lo_.size(), 0);
  Row clean;
  clean.sense = row.sense;
  clean.rhs = row.rhs;
  for (std::size_t k = 0; k < row.index.size(); ++k) {
    const int j = row.index[k];
    if (j < 0 || j >= variables()) throw ParameterError("row references variable " + std::to_string(j) + " out of range");
    if (seen[j]) throw ParameterError("row references variable " + std::to_string(j) + " twice");
    if (!std::isfinite(row.coef[k])) throw ParameterError("row coefficient must be finite");
    seen[j] = 1;
    if (row.coef[k] == 0.0) continue;
    clean.index.push_back(j);
    clean.coef.push_back(row.coef[k]);
  }
  rows_.push_back(std::move(clean));
  return rows() - 1;
}

void LinearProgram::set_bounds(int j, double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw ParameterError("invalid variable bounds");
  lo_[j] = lo;
  hi_[j] = hi;
}

void LinearProgram::truncate_rows(int count) {
  if (count < rows()) rows_.resize(static_cast<std::size_t>(count));
}

std::size_t LinearProgram::nonzeros() const noexcept {
  std::size_t nz = 0;
  for (const auto& r : rows_) nz += r.index.size();
  return nz;
}

double LinearProgram::objective(std::span<const double> x) const {
  double sum = 0.0;
  for (int j = 0; j < variables(); ++j) sum += cost_[j] * x[j];
  return sum;
}

double LinearProgram::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (int j = 0; j < variables(); ++j) {
    worst = std::max(worst, lo_[j] - x[j]);
    worst = std::max(worst, x[j] - hi_[j]);
  }
  for (const auto& r : rows_) worst = std::max(worst, r.violation(x));
  return worst;
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

std::unique_ptr<LpSolver> make_lp_solver(LpBackend backend) {
  if (backend == LpBackend::Tableau) return std::make_unique<TableauSimplex>();
  return std::make_unique<RevisedSimplex>();
}

LpSolution solve_lp(const LinearProgram& lp) { return RevisedSimplex().solve(lp); }

LpSolution add_row_and_resolve(LinearProgram& lp, Row row, const LpSolution& previous) {
  lp.add_row(std::move(row));
  RevisedSimplex solver;
  return solver.solve(lp, previous.basis.empty() ? nullptr : &previous.basis);
}

namespace {

// Shortest rendering that fits the 12-character numeric MPS field.
std::string mps_number(double v) {
  char buf[32];
  for (int precision = 12; precision >= 1; --precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::char_traits<char>::length(buf) <= 12) return buf;
  }
  return buf;
}

void mps_line(std::ostream& out, const char* code, const std::string& f2, const std::string& f3,
              const std::string& f4) {
  char buf[80];
  std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", code, f2.c_str(), f3.c_str(), f4.c_str());
  std::string line(buf);
  while (!line.empty() && line.back() == ' ') line.pop_back();
  out << line << '\n';
}

}  // namespace

void write_mps(std::ostream& out, const LinearProgram& lp, std::span<const char> integer,
               const std::string& name) {
  const int n = lp.variables();
  const int m = lp.rows();
  auto col = [](int j) { return "C" + std::to_string(j + 1); };
  auto rowname = [](int i) { return "R" + std::to_string(i + 1); };

  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  mps_line(out, "N", "OBJ", "", "");
  for (int i = 0; i < m; ++i) {
    const char* code = lp.row(i).sense == Sense::Le ? "L" : lp.row(i).sense == Sense::Ge ? "G" : "E";
    mps_line(out, code, rowname(i), "", "");
  }

  std::vector<std::vector<std::pair<int, double>>> columns(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    const Row& r = lp.row(i);
    for (std::size_t k = 0; k < r.index.size(); ++k) columns[r.index[k]].emplace_back(i, r.coef[k]);
  }

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < n; ++j) {
    const bool is_int = !integer.empty() && integer[j];
    if (is_int != in_int) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "    MARKER%-4d'MARKER'                 '%s'", marker++,
                    is_int ? "INTORG" : "INTEND");
      out << buf << '\n';
      in_int = is_int;
    }
    if (lp.cost(j) != 0.0) mps_line(out, "", col(j), "OBJ", mps_number(lp.cost(j)));
    for (auto [i, a] : columns[j]) mps_line(out, "", col(j), rowname(i), mps_number(a));
    if (lp.cost(j) == 0.0 && columns[j].empty()) mps_line(out, "", col(j), "OBJ", "0");
  }
  if (in_int) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "    MARKER%-4d'MARKER'                 'INTEND'", marker);
    out << buf << '\n';
  }

  out << "RHS\n";
  for (int i = 0; i < m; ++i) {
    if (lp.row(i).rhs != 0.0) mps_line(out, "", "RHS", rowname(i), mps_number(lp.row(i).rhs));
  }

  out << "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    if (lo == hi) {
      mps_line(out, "FX", "BND", col(j), mps_number(lo));
      continue;
    }
    if (lo == -kInf && hi == kInf) {
      mps_line(out, "FR", "BND", col(j), "");
      continue;
    }
    if (lo == -kInf) {
      mps_line(out, "MI", "BND", col(j), "");
    } else if (lo != 0.0) {
      mps_line(out, "LO", "BND", col(j), mps_number(lo));
    }
    if (hi != kInf) mps_line(out, "UP", "BND", col(j), mps_number(hi));
  }
  out << "ENDATA\n";
}

}  // namespace pmc
