#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "pmc/error.hpp"
#include "pmc/lp.hpp"

namespace pmc {

namespace {

enum class PhaseResult { Optimal, Infeasible, Unbounded };

// Computational form: A x - r = 0 with one logical r_i per row carrying the
// row bounds. Columns 0..n-1 are structural, n..n+m-1 logical (-e_i).
class Engine {
 public:
  Engine(const LinearProgram& lp, LpTolerances tol, int refactor_interval)
      : tol_(tol), refactor_interval_(std::max(1, refactor_interval)) {
    n_ = lp.variables();
    m_ = lp.rows();
    total_ = n_ + m_;
    lo_.resize(total_);
    hi_.resize(total_);
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower(j);
      hi_[j] = lp.upper(j);
      cost_[j] = lp.cost(j);
    }
    std::vector<int> count(n_ + 1, 0);
    for (int i = 0; i < m_; ++i) {
      const Row& r = lp.row(i);
      lo_[n_ + i] = r.sense == Sense::Le ? -kInf : r.rhs;
      hi_[n_ + i] = r.sense == Sense::Ge ? kInf : r.rhs;
      for (int j : r.index) ++count[j + 1];
    }
    start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j) start_[j + 1] = start_[j] + count[j + 1];
    index_.resize(start_[n_]);
    value_.resize(start_[n_]);
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int i = 0; i < m_; ++i) {
      const Row& r = lp.row(i);
      for (std::size_t k = 0; k < r.index.size(); ++k) {
        const int p = fill[r.index[k]]++;
        index_[p] = i;
        value_[p] = r.coef[k];
      }
    }
    status_.assign(total_, VarStatus::AtLower);
    x_.assign(total_, 0.0);
    d_.assign(total_, 0.0);
    head_.assign(m_, -1);
    work_cost_ = cost_;
  }

  void load_basis(const Basis* warm) {
    bool ok = warm != nullptr && warm->structurals == n_ &&
              static_cast<int>(warm->status.size()) >= n_ &&
              static_cast<int>(warm->status.size()) <= total_;
    if (ok) {
      std::fill(status_.begin(), status_.end(), VarStatus::Basic);
      std::copy(warm->status.begin(), warm->status.end(), status_.begin());
      int basics = 0;
      for (int j = 0; j < total_; ++j) basics += status_[j] == VarStatus::Basic;
      ok = basics == m_;
    }
    if (!ok) {
      slack_basis();
      return;
    }
    int pos = 0;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::Basic) head_[pos++] = j;
      else status_[j] = normalize_nonbasic(j, status_[j]);
    }
  }

  LpSolution run() {
    const long soft = 10L * (n_ + m_) + 100;
    hard_cap_ = 50L * (n_ + m_) + 20000;
    bland_after_ = soft;
    for (int pass = 0; pass < 8; ++pass) {
      if (!refactor()) {
        slack_basis();
        if (!refactor()) throw SolverFailure("cannot factorize slack basis");
      }
      work_cost_ = cost_;
      compute_primal();
      compute_duals();
      const bool primal_ok = primal_infeasibility() <= tol_.primal;
      if (!primal_ok) flip_to_dual_feasible();
      const bool dual_ok = dual_infeasible_count() == 0;
      if (primal_ok && dual_ok) return finish(LpStatus::Optimal);
      phase_iterations_ = 0;
      if (primal_ok) {
        if (primal() == PhaseResult::Unbounded) return finish(LpStatus::Unbounded);
      } else if (dual_ok) {
        if (dual() == PhaseResult::Infeasible) return finish(LpStatus::Infeasible);
      } else {
        std::fill(work_cost_.begin(), work_cost_.end(), 0.0);
        std::fill(d_.begin(), d_.end(), 0.0);
        if (dual() == PhaseResult::Infeasible) return finish(LpStatus::Infeasible);
        work_cost_ = cost_;
        compute_duals();
        phase_iterations_ = 0;
        if (primal() == PhaseResult::Unbounded) return finish(LpStatus::Unbounded);
      }
    }
    throw SolverFailure("simplex did not settle after repeated refactorization");
  }

 private:
  bool boxed(int j) const { return lo_[j] > -kInf && hi_[j] < kInf; }
  bool fixed(int j) const { return lo_[j] == hi_[j]; }

  VarStatus normalize_nonbasic(int j, VarStatus s) const {
    if (s == VarStatus::AtUpper && hi_[j] < kInf) return fixed(j) ? VarStatus::AtLower : s;
    if (lo_[j] > -kInf) return VarStatus::AtLower;
    if (hi_[j] < kInf) return VarStatus::AtUpper;
    return VarStatus::Free;
  }

  double nonbasic_value(int j) const {
    switch (status_[j]) {
      case VarStatus::AtLower: return lo_[j];
      case VarStatus::AtUpper: return hi_[j];
      default: return 0.0;
    }
  }

  void slack_basis() {
    for (int j = 0; j < n_; ++j) status_[j] = normalize_nonbasic(j, VarStatus::AtLower);
    for (int i = 0; i < m_; ++i) {
      status_[n_ + i] = VarStatus::Basic;
      head_[i] = n_ + i;
    }
  }

  template <class F>
  void for_column(int j, F&& f) const {
    if (j >= n_) {
      f(j - n_, -1.0);
      return;
    }
    for (int p = start_[j]; p < start_[j + 1]; ++p) f(index_[p], value_[p]);
  }

  double column_dot(int j, const Eigen::VectorXd& v) const {
    if (j >= n_) return -v[j - n_];
    double s = 0.0;
    for (int p = start_[j]; p < start_[j + 1]; ++p) s += value_[p] * v[index_[p]];
    return s;
  }

  bool refactor() {
    etas_.clear();
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m_; ++i) for_column(head_[i], [&](int r, double a) { trip.emplace_back(r, i, a); });
    Eigen::SparseMatrix<double> b(m_, m_);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    if (lu_.info() != Eigen::Success) return false;
    // SparseLU accepts tiny pivots; reject bases whose solves are unreliable.
    Eigen::VectorXd probe = Eigen::VectorXd::Ones(m_);
    Eigen::VectorXd z = lu_.solve(probe);
    if (!z.allFinite() || z.cwiseAbs().maxCoeff() > 1e12) return false;
    return true;
  }

  void ftran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    v = lu_.solve(v).eval();
    for (const Eta& e : etas_) {
      const double pivot = v[e.row] / e.pivot;
      v[e.row] = pivot;
      if (pivot == 0.0) continue;
      for (std::size_t k = 0; k < e.index.size(); ++k) v[e.index[k]] -= e.value[k] * pivot;
    }
  }

  void btran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->row];
      for (std::size_t k = 0; k < it->index.size(); ++k) s -= it->value[k] * v[it->index[k]];
      v[it->row] = s / it->pivot;
    }
    v = lu_.transpose().solve(v).eval();
  }

  void compute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::Basic) continue;
      x_[j] = nonbasic_value(j);
      if (x_[j] != 0.0) for_column(j, [&](int r, double a) { rhs[r] -= a * x_[j]; });
    }
    ftran(rhs);
    for (int i = 0; i < m_; ++i) x_[head_[i]] = rhs[i];
  }

  void compute_duals() {
    Eigen::VectorXd y(m_);
    for (int i = 0; i < m_; ++i) y[i] = work_cost_[head_[i]];
    btran(y);
    for (int j = 0; j < total_; ++j) {
      d_[j] = status_[j] == VarStatus::Basic ? 0.0 : work_cost_[j] - column_dot(j, y);
    }
  }

  double primal_infeasibility() const {
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int j = head_[i];
      worst = std::max({worst, lo_[j] - x_[j], x_[j] - hi_[j]});
    }
    return worst;
  }

  bool dual_infeasible(int j) const {
    if (fixed(j)) return false;
    switch (status_[j]) {
      case VarStatus::AtLower: return d_[j] < -tol_.dual;
      case VarStatus::AtUpper: return d_[j] > tol_.dual;
      case VarStatus::Free: return std::abs(d_[j]) > tol_.dual;
      default: return false;
    }
  }

  int dual_infeasible_count() const {
    int count = 0;
    for (int j = 0; j < total_; ++j) count += dual_infeasible(j);
    return count;
  }

  void flip_to_dual_feasible() {
    bool flipped = false;
    for (int j = 0; j < total_; ++j) {
      if (status_[j] == VarStatus::Basic || !boxed(j) || fixed(j)) continue;
      if (status_[j] == VarStatus::AtLower && d_[j] < -tol_.dual) {
        status_[j] = VarStatus::AtUpper;
        flipped = true;
      } else if (status_[j] == VarStatus::AtUpper && d_[j] > tol_.dual) {
        status_[j] = VarStatus::AtLower;
        flipped = true;
      }
    }
    if (flipped) compute_primal();
  }

  void count_iteration() {
    ++iterations_;
    ++phase_iterations_;
    if (iterations_ > hard_cap_) throw SolverFailure("simplex iteration limit exceeded");
  }

  bool bland() const { return phase_iterations_ > bland_after_; }

  // Replaces basic position r by column q whose ftran'd column is alpha.
  void pivot(int r, int q, const Eigen::VectorXd& alpha, VarStatus leaving_status) {
    const int leaving = head_[r];
    status_[leaving] = leaving_status;
    x_[leaving] = nonbasic_value(leaving);
    status_[q] = VarStatus::Basic;
    head_[r] = q;
    Eta e;
    e.row = r;
    e.pivot = alpha[r];
    for (int i = 0; i < m_; ++i) {
      if (i != r && alpha[i] != 0.0) {
        e.index.push_back(i);
        e.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
    if (static_cast<int>(etas_.size()) >= refactor_interval_) {
      if (!refactor()) {
        slack_basis();
        if (!refactor()) throw SolverFailure("cannot factorize slack basis");
      }
      compute_primal();
      compute_duals();
    }
  }

  PhaseResult primal() {
    Eigen::VectorXd alpha(m_);
    while (true) {
      compute_duals();
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic || !dual_infeasible(j)) continue;
        const double score = std::abs(d_[j]);
        if (bland()) {
          q = j;
          break;
        }
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) return PhaseResult::Optimal;
      count_iteration();
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
      alpha.setZero();
      for_column(q, [&](int r, double a) { alpha[r] = a; });
      ftran(alpha);

      // Basic i moves at rate -dir * alpha[i] per unit step of the entering variable.
      auto limit = [&](int i, double slack) {
        const int j = head_[i];
        const double rate = -dir * alpha[i];
        if (rate < 0.0 && lo_[j] > -kInf) return (x_[j] - lo_[j] + slack) / -rate;
        if (rate > 0.0 && hi_[j] < kInf) return (hi_[j] - x_[j] + slack) / rate;
        return kInf;
      };
      double theta_max = kInf;
      const double slack = bland() ? 0.0 : tol_.primal;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(alpha[i]) < tol_.pivot) continue;
        theta_max = std::min(theta_max, limit(i, slack));
      }
      int r = -1;
      double step = kInf;
      double best_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (std::abs(alpha[i]) < tol_.pivot) continue;
        const double ratio = limit(i, 0.0);
        if (ratio == kInf || ratio > theta_max) continue;
        const bool better = bland() ? (r < 0 || ratio < step - 1e-12 ||
                                       (ratio <= step + 1e-12 && head_[i] < head_[r]))
                                    : std::abs(alpha[i]) > best_alpha;
        if (better) {
          r = i;
          step = ratio;
          best_alpha = std::abs(alpha[i]);
        }
      }
      const double range = hi_[q] - lo_[q];
      if (r < 0 && range == kInf) return PhaseResult::Unbounded;
      if (r < 0 || range <= step) {
        // Bound flip: the entering variable reaches its opposite bound first.
        const double t = range;
        for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * t * alpha[i];
        status_[q] = dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
        x_[q] = nonbasic_value(q);
        continue;
      }
      step = std::max(step, 0.0);
      for (int i = 0; i < m_; ++i) x_[head_[i]] -= dir * step * alpha[i];
      x_[q] += dir * step;
      const int leaving = head_[r];
      const double rate = -dir * alpha[r];
      VarStatus leave = rate < 0.0 ? VarStatus::AtLower : VarStatus::AtUpper;
      if (fixed(leaving)) leave = VarStatus::AtLower;
      pivot(r, q, alpha, leave);
    }
  }

  PhaseResult dual() {
    Eigen::VectorXd rho(m_);
    Eigen::VectorXd alpha(m_);
    std::vector<double> row(total_, 0.0);
    while (true) {
      int r = -1;
      double worst = tol_.primal;
      for (int i = 0; i < m_; ++i) {
        const int j = head_[i];
        const double infeas = std::max(lo_[j] - x_[j], x_[j] - hi_[j]);
        if (infeas <= tol_.primal) continue;
        if (bland()) {
          if (r < 0 || j < head_[r]) r = i;
        } else if (infeas > worst) {
          worst = infeas;
          r = i;
        }
      }
      if (r < 0) return PhaseResult::Optimal;
      count_iteration();
      const int leaving = head_[r];
      const bool to_lower = x_[leaving] < lo_[leaving];
      rho.setZero();
      rho[r] = 1.0;
      btran(rho);

      // Candidates: nonbasic j whose move pushes x_leaving toward its bound.
      auto eligible = [&](int j, double a) {
        if (std::abs(a) < tol_.pivot || fixed(j)) return false;
        switch (status_[j]) {
          case VarStatus::AtLower: return to_lower ? a < 0.0 : a > 0.0;
          case VarStatus::AtUpper: return to_lower ? a > 0.0 : a < 0.0;
          case VarStatus::Free: return true;
          default: return false;
        }
      };
      double theta_max = kInf;
      const double slack = bland() ? 0.0 : tol_.dual;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        row[j] = column_dot(j, rho);
        if (!eligible(j, row[j])) continue;
        theta_max = std::min(theta_max, (std::abs(d_[j]) + slack) / std::abs(row[j]));
      }
      int q = -1;
      double best_alpha = 0.0;
      for (int j = 0; j < total_; ++j) {
        if (status_[j] == VarStatus::Basic || !eligible(j, row[j])) continue;
        const double ratio = std::abs(d_[j]) / std::abs(row[j]);
        if (ratio > theta_max) continue;
        if (bland()) {
          q = j;
          break;
        }
        if (std::abs(row[j]) > best_alpha) {
          best_alpha = std::abs(row[j]);
          q = j;
        }
      }
      if (q < 0) return PhaseResult::Infeasible;

      alpha.setZero();
      for_column(q, [&](int i, double a) { alpha[i] = a; });
      ftran(alpha);
      if (std::abs(alpha[r]) < tol_.pivot) {
        // Row and column disagree on the pivot; refresh the factorization.
        if (!etas_.empty()) {
          if (!refactor()) throw SolverFailure("refactorization failed in dual simplex");
          compute_primal();
          compute_duals();
          continue;
        }
        throw SolverFailure("unstable pivot in dual simplex");
      }

      // Entering reduced cost is driven to zero; a wrong-signed d within
      // tolerance is treated as zero.
      double dq = d_[q];
      if ((status_[q] == VarStatus::AtLower && dq < 0.0) || (status_[q] == VarStatus::AtUpper && dq > 0.0)) dq = 0.0;
      const double theta_d = dq / row[q];
      for (int j = 0; j < total_; ++j) {
        if (status_[j] != VarStatus::Basic) d_[j] -= theta_d * row[j];
      }
      d_[q] = 0.0;
      d_[leaving] = -theta_d;

      const double target = to_lower ? lo_[leaving] : hi_[leaving];
      const double delta = (x_[leaving] - target) / alpha[r];
      for (int i = 0; i < m_; ++i) x_[head_[i]] -= delta * alpha[i];
      x_[q] += delta;
      pivot(r, q, alpha, fixed(leaving) || to_lower ? VarStatus::AtLower : VarStatus::AtUpper);
    }
  }

  LpSolution finish(LpStatus status) {
    LpSolution out;
    out.status = status;
    out.iterations = iterations_;
    out.basis.structurals = n_;
    out.basis.status = status_;
    if (status == LpStatus::Optimal) {
      out.x.assign(x_.begin(), x_.begin() + n_);
      for (int j = 0; j < n_; ++j) out.x[j] = std::clamp(out.x[j], lo_[j], hi_[j]);
      out.objective = 0.0;
      for (int j = 0; j < n_; ++j) out.objective += cost_[j] * out.x[j];
    } else if (status == LpStatus::Unbounded) {
      out.objective = -kInf;
    }
    return out;
  }

  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };

  LpTolerances tol_;
  int refactor_interval_;
  int n_ = 0, m_ = 0, total_ = 0;
  std::vector<int> start_, index_;
  std::vector<double> value_;
  std::vector<double> lo_, hi_, cost_, work_cost_;
  std::vector<VarStatus> status_;
  std::vector<double> x_, d_;
  std::vector<int> head_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  long iterations_ = 0;
  long phase_iterations_ = 0;
  long bland_after_ = 0;
  long hard_cap_ = 0;
};

}  // namespace

LpSolution RevisedSimplex::solve(const LinearProgram& lp, const Basis* warm) {
  Engine engine(lp, tol_, refactor_interval_);
  engine.load_basis(warm);
  return engine.run();
}

}  // namespace pmc
