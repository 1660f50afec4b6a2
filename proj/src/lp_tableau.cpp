#include <cmath>
#include <vector>

#include "pmc/error.hpp"
#include "pmc/lp.hpp"

namespace pmc {

namespace {

// Original variable j = offset + sum sign_k * column_k over its standard-form columns.
struct Substitution {
  double offset = 0.0;
  int plus = -1;
  int minus = -1;
  double sign = 1.0;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows, -1) {}

  double& at(int i, int j) { return a_[i * (cols_ + 1) + j]; }
  double& rhs(int i) { return at(i, cols_); }
  double& obj(int j) { return at(rows_, j); }

  void pivot(int r, int c) {
    const double p = at(r, c);
    for (int j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  // Bland's rule over columns [0, usable). Returns false on unboundedness.
  bool optimize(int usable, double tol, long& iterations, long cap) {
    while (true) {
      int c = -1;
      for (int j = 0; j < usable; ++j) {
        if (obj(j) < -tol) {
          c = j;
          break;
        }
      }
      if (c < 0) return true;
      int r = -1;
      double best = kInf;
      for (int i = 0; i < rows_; ++i) {
        if (at(i, c) <= tol) continue;
        const double ratio = rhs(i) / at(i, c);
        if (ratio < best - tol || (ratio <= best + tol && r >= 0 && basis_[i] < basis_[r])) {
          best = ratio;
          r = i;
        }
      }
      if (r < 0) return false;
      if (++iterations > cap) throw SolverFailure("tableau simplex iteration limit exceeded");
      pivot(r, c);
    }
  }

  int rows_, cols_;
  std::vector<double> a_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution TableauSimplex::solve(const LinearProgram& lp, const Basis*) {
  const int n = lp.variables();
  std::vector<Substitution> sub(n);
  int cols = 0;
  std::vector<std::pair<int, double>> upper_rows;  // (column, range)
  for (int j = 0; j < n; ++j) {
    const double lo = lp.lower(j), hi = lp.upper(j);
    if (lo > -kInf) {
      sub[j] = {lo, cols++, -1, 1.0};
      if (hi < kInf) upper_rows.emplace_back(sub[j].plus, hi - lo);
    } else if (hi < kInf) {
      sub[j] = {hi, cols++, -1, -1.0};
    } else {
      sub[j].plus = cols++;
      sub[j].minus = cols++;
    }
  }

  struct DenseRow {
    std::vector<double> a;
    Sense sense;
    double rhs;
  };
  std::vector<DenseRow> rows;
  for (const Row& r : lp.row_list()) {
    DenseRow d{std::vector<double>(cols, 0.0), r.sense, r.rhs};
    for (std::size_t k = 0; k < r.index.size(); ++k) {
      const Substitution& s = sub[r.index[k]];
      const double a = r.coef[k];
      d.rhs -= a * s.offset;
      d.a[s.plus] += a * s.sign;
      if (s.minus >= 0) d.a[s.minus] -= a;
    }
    rows.push_back(std::move(d));
  }
  for (auto [c, range] : upper_rows) {
    DenseRow d{std::vector<double>(cols, 0.0), Sense::Le, range};
    d.a[c] = 1.0;
    rows.push_back(std::move(d));
  }

  const int m = static_cast<int>(rows.size());
  int slacks = 0;
  for (const auto& r : rows) slacks += r.sense != Sense::Eq;
  const int artificial0 = cols + slacks;
  const int total = artificial0 + m;
  Tableau t(m, total);
  int s = cols;
  for (int i = 0; i < m; ++i) {
    const double flip = rows[i].rhs < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < cols; ++j) t.at(i, j) = flip * rows[i].a[j];
    if (rows[i].sense != Sense::Eq) t.at(i, s++) = flip * (rows[i].sense == Sense::Le ? 1.0 : -1.0);
    t.at(i, artificial0 + i) = 1.0;
    t.rhs(i) = flip * rows[i].rhs;
    t.basis_[i] = artificial0 + i;
  }

  // Phase 1: minimize the sum of artificials, priced out against the basis.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= total; ++j)
      if (j < artificial0 || j == total) t.obj(j) -= t.at(i, j);

  long iterations = 0;
  const long cap = 100000L + 1000L * (m + total);
  t.optimize(artificial0, tol_, iterations, cap);
  LpSolution out;
  if (-t.obj(total) > 1e-7) {
    out.status = LpStatus::Infeasible;
    out.iterations = iterations;
    return out;
  }
  for (int i = 0; i < m; ++i) {
    if (t.basis_[i] < artificial0) continue;
    for (int j = 0; j < artificial0; ++j) {
      if (std::abs(t.at(i, j)) > 1e-9) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 objective in standard-form columns.
  for (int j = 0; j <= total; ++j) t.obj(j) = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c = lp.cost(j);
    t.obj(sub[j].plus) += c * sub[j].sign;
    if (sub[j].minus >= 0) t.obj(sub[j].minus) -= c;
  }
  for (int i = 0; i < m; ++i) {
    const int b = t.basis_[i];
    const double f = t.obj(b);
    if (f == 0.0) continue;
    for (int j = 0; j <= total; ++j) t.obj(j) -= f * t.at(i, j);
  }
  out.iterations = iterations;
  if (!t.optimize(artificial0, tol_, out.iterations, cap)) {
    out.status = LpStatus::Unbounded;
    out.objective = -kInf;
    return out;
  }

  std::vector<double> value(total, 0.0);
  for (int i = 0; i < m; ++i) value[t.basis_[i]] = t.rhs(i);
  out.status = LpStatus::Optimal;
  out.x.resize(n);
  for (int j = 0; j < n; ++j) {
    double v = sub[j].offset + sub[j].sign * value[sub[j].plus];
    if (sub[j].minus >= 0) v -= value[sub[j].minus];
    out.x[j] = v;
  }
  out.objective = lp.objective(out.x);
  return out;
}

}  // namespace pmc
