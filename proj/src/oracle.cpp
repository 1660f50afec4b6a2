#include "pmc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <boost/multiprecision/cpp_int.hpp>

#include "pmc/error.hpp"

namespace pmc {

namespace {

using Rational = boost::multiprecision::cpp_rational;

void require_jobs(const Instance& inst, int limit) {
  if (inst.jobs() > limit) throw SizeExceeded("oracle limited to n <= " + std::to_string(limit));
}

struct MakespanSearch {
  const Instance& inst;
  std::vector<int> machine;
  std::vector<Time> load;
  Time best = -1;

  void run(int v, int used) {
    const int n = inst.jobs();
    if (v == n) {
      const Time span = *std::max_element(load.begin(), load.end());
      if (best < 0 || span < best) best = span;
      return;
    }
    // Machines are numbered by first use, so job v may open at most machine `used`.
    const int limit = std::min(used + 1, inst.m);
    for (int k = 0; k < limit; ++k) {
      if (best >= 0 && load[k] + inst.p[v] >= best) continue;
      bool clash = false;
      for (int u = 0; u < v && !clash; ++u) clash = machine[u] == k && inst.graph.adjacent(u, v);
      if (clash) continue;
      machine[v] = k;
      load[k] += inst.p[v];
      run(v + 1, std::max(used, k + 1));
      load[k] -= inst.p[v];
      machine[v] = -1;
    }
  }
};

// Depth-first enumeration of integer model points, one decision per slot.
class PointSearch {
 public:
  PointSearch(const MilpModel& model, const Row* cut, double tol, const PointVisitor& visit)
      : model_(model), inst_(model.instance), cut_(cut), tol_(tol), visit_(visit) {
    const int cols = model.lp.variables();
    point_.assign(static_cast<std::size_t>(cols), 0.0);
    coef_.assign(static_cast<std::size_t>(cols), 0.0);
    if (cut_) {
      for (std::size_t i = 0; i < cut_->index.size(); ++i) coef_[cut_->index[i]] += cut_->coef[i];
      y_coef_ = coef_[model.makespan];
    }
    build_slots();
  }

  void run() {
    if (model_.kind == Formulation::AF) {
      covered_.assign(static_cast<std::size_t>(inst_.jobs()), 0);
    } else {
      covered_.assign(static_cast<std::size_t>(inst_.jobs()), 0);
      open_.assign(static_cast<std::size_t>(inst_.jobs()), 0);
    }
    search(0, 0.0);
  }

 private:
  struct Slot {
    int a;
    int b;
    int col;  // -1 for a fixed source representative
  };

  void build_slots() {
    const int n = inst_.jobs();
    if (model_.kind == Formulation::AF) {
      for (int v = 0; v < n; ++v)
        for (int k = 0; k < inst_.m; ++k) slots_.push_back({v, k, model_.var(v, k)});
    } else {
      const auto& order = model_.ordering.order();
      block_end_.assign(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < order.size(); ++i) {
        const Vertex u = order[i];
        slots_.push_back({u, u, model_.var(u, u)});
        for (std::size_t j = i + 1; j < order.size(); ++j) {
          const Vertex w = order[j];
          if (!inst_.graph.adjacent(u, w)) slots_.push_back({u, w, model_.var(u, w)});
        }
        block_end_[u] = static_cast<int>(slots_.size());
      }
    }
    const std::size_t s = slots_.size();
    suffix_pos_.assign(s + 1, 0.0);
    suffix_neg_.assign(s + 1, 0.0);
    for (std::size_t i = s; i-- > 0;) {
      const double c = slots_[i].col >= 0 ? coef_[slots_[i].col] : 0.0;
      suffix_pos_[i] = suffix_pos_[i + 1] + std::max(0.0, c);
      suffix_neg_[i] = suffix_neg_[i + 1] + std::min(0.0, c);
    }
  }

  // False when the cut cannot be violated below this node.
  bool promising(std::size_t i, double lhs) const {
    if (!cut_ || y_coef_ != 0.0) return true;
    switch (cut_->sense) {
      case Sense::Le: return lhs + suffix_pos_[i] > cut_->rhs + tol_;
      case Sense::Ge: return lhs + suffix_neg_[i] < cut_->rhs - tol_;
      case Sense::Eq:
        return lhs + suffix_pos_[i] > cut_->rhs + tol_ || lhs + suffix_neg_[i] < cut_->rhs - tol_;
    }
    return true;
  }

  bool allowed(int col, int value) const {
    if (col < 0) return value == 1;
    return model_.lp.lower(col) <= value && value <= model_.lp.upper(col);
  }

  bool set(int col, int value, double& lhs) {
    if (col < 0) return true;
    point_[col] = value;
    lhs += coef_[col] * value;
    return true;
  }

  void unset(int col, double& lhs) {
    if (col < 0) return;
    lhs -= coef_[col] * point_[col];
    point_[col] = 0.0;
  }

  // Returns false to stop the whole enumeration.
  bool search(std::size_t i, double lhs) {
    if (!promising(i, lhs)) return true;
    if (i == slots_.size()) return leaf();
    return model_.kind == Formulation::AF ? branch_af(i, lhs) : branch_rf(i, lhs);
  }

  bool try_value(std::size_t i, int value, double lhs, std::size_t next) {
    const Slot& s = slots_[i];
    if (!allowed(s.col, value)) return true;
    set(s.col, value, lhs);
    const bool more = search(next, lhs);
    unset(s.col, lhs);
    return more;
  }

  // Value order puts the choice that raises the cut's lhs first.
  std::array<int, 2> value_order(int col) const {
    const bool up = col >= 0 && cut_ && ((cut_->sense == Sense::Ge) ? coef_[col] < 0 : coef_[col] > 0);
    return up ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1};
  }

  bool branch_af(std::size_t i, double lhs) {
    const Slot& s = slots_[i];
    const bool last = s.b == inst_.m - 1;
    for (int value : value_order(s.col)) {
      if (value == 1) {
        bool clash = false;
        for (int u = 0; u < s.a && !clash; ++u)
          clash = point_[model_.var(u, s.b)] > 0.5 && inst_.graph.adjacent(u, s.a);
        if (clash) continue;
        ++covered_[s.a];
        const bool more = try_value(i, 1, lhs, i + 1);
        --covered_[s.a];
        if (!more) return false;
      } else {
        if (last && covered_[s.a] == 0) continue;
        if (!try_value(i, 0, lhs, i + 1)) return false;
      }
    }
    return true;
  }

  bool branch_rf(std::size_t i, double lhs) {
    const Slot& s = slots_[i];
    if (s.a == s.b) {
      const Vertex u = s.a;
      const bool source = s.col < 0;
      for (int value : value_order(s.col)) {
        if (value == 0) {
          if (source || covered_[u] == 0) continue;
          if (!try_value(i, 0, lhs, static_cast<std::size_t>(block_end_[u]))) return false;
        } else {
          open_[u] = 1;
          const bool more = try_value(i, 1, lhs, i + 1);
          open_[u] = 0;
          if (!more) return false;
        }
      }
      return true;
    }
    for (int value : value_order(s.col)) {
      if (value == 1) {
        // u's class must stay stable: no conflict with members chosen so far.
        bool clash = false;
        for (std::size_t j = i; j-- > 0 && slots_[j].a == s.a && slots_[j].b != s.a && !clash;)
          clash = point_[slots_[j].col] > 0.5 && inst_.graph.adjacent(slots_[j].b, s.b);
        if (clash) continue;
        ++covered_[s.b];
        const bool more = try_value(i, 1, lhs, i + 1);
        --covered_[s.b];
        if (!more) return false;
      } else {
        if (!try_value(i, 0, lhs, i + 1)) return false;
      }
    }
    return true;
  }

  Time least_makespan() const {
    const int n = inst_.jobs();
    Time best = 0;
    if (model_.kind == Formulation::AF) {
      for (int k = 0; k < inst_.m; ++k) {
        Time load = 0;
        for (int v = 0; v < n; ++v)
          if (point_[model_.var(v, k)] > 0.5) load += inst_.p[v];
        best = std::max(best, load);
      }
      return best;
    }
    for (int u = 0; u < n; ++u) {
      if (!open_[u]) continue;
      Time load = inst_.p[u];
      for (int w = 0; w < n; ++w) {
        const int col = w == u ? -1 : model_.var(u, w);
        if (col >= 0 && point_[col] > 0.5) load += inst_.p[w];
      }
      best = std::max(best, load);
    }
    return best;
  }

  bool leaf() {
    // Non-source representatives that were never covered must be open.
    if (model_.kind == Formulation::RF) {
      for (int v = 0; v < inst_.jobs(); ++v)
        if (!open_[v] && covered_[v] == 0) return true;
    }
    for (int r = 0; r < model_.lp.rows(); ++r) {
      const auto cls = model_.row_class[r];
      if (cls != RowClass::SymLoad && cls != RowClass::SymLabel) continue;
      if (model_.lp.row(r).violation(point_) > 1e-9) return true;
    }
    const Time y = least_makespan();
    point_[model_.makespan] = static_cast<double>(y);
    if (cut_ && y_coef_ != 0.0) {
      // The makespan column is unbounded above.
      const bool grows = cut_->sense == Sense::Ge ? y_coef_ < 0 : y_coef_ > 0;
      if (grows && cut_->sense != Sense::Eq) point_[model_.makespan] = static_cast<double>(y) + 1e6;
    }
    const bool more = visit_(point_);
    point_[model_.makespan] = 0.0;
    return more;
  }

  const MilpModel& model_;
  const Instance& inst_;
  const Row* cut_;
  double tol_;
  const PointVisitor& visit_;
  std::vector<Slot> slots_;
  std::vector<int> block_end_;
  std::vector<double> point_;
  std::vector<double> coef_;
  std::vector<double> suffix_pos_;
  std::vector<double> suffix_neg_;
  std::vector<int> covered_;
  std::vector<char> open_;
  double y_coef_ = 0.0;
};

}  // namespace

std::optional<Time> brute_force_makespan(const Instance& inst) {
  require_jobs(inst, 12);
  MakespanSearch search{inst, std::vector<int>(static_cast<std::size_t>(inst.jobs()), -1),
                        std::vector<Time>(static_cast<std::size_t>(inst.m), 0)};
  if (inst.jobs() == 0) return 0;
  search.run(0, 0);
  if (search.best < 0) return std::nullopt;
  return search.best;
}

void enumerate_model_points(const MilpModel& model, const PointVisitor& visit) {
  require_jobs(model.instance, 10);
  PointSearch(model, nullptr, 0.0, visit).run();
}

std::optional<std::vector<double>> find_violating_point(const MilpModel& model, const Row& cut, double tol) {
  require_jobs(model.instance, 10);
  std::optional<std::vector<double>> found;
  const PointVisitor visit = [&](const std::vector<double>& point) {
    if (cut.violation(point) <= tol) return true;
    found = point;
    return false;
  };
  PointSearch(model, &cut, tol, visit).run();
  return found;
}

std::vector<RfPoint> enumerate_rf_points(const Instance& inst, const VertexOrdering& ord) {
  require_jobs(inst, 8);
  const MilpModel model = build_rf(inst, ord);
  std::vector<RfPoint> points;
  enumerate_model_points(model, [&](const std::vector<double>& point) {
    RfPoint p;
    for (int j = 0; j < model.lp.variables(); ++j)
      if (j != model.makespan) p.x.push_back(point[j] > 0.5 ? 1 : 0);
    p.y = static_cast<Time>(point[model.makespan]);
    points.push_back(std::move(p));
    return true;
  });
  return points;
}

// Basis of the difference space in reduced row echelon form over Q. A copy
// scaled by the common denominator is kept in int64 when it fits, so the
// membership test for the (common) in-span case avoids rational arithmetic.
struct AffineHull::Impl {
  std::vector<std::int64_t> origin;
  bool has_origin = false;
  std::vector<std::vector<Rational>> rows;
  std::vector<int> pivots;
  std::vector<char> is_pivot;
  bool scaled_ok = true;
  std::int64_t denom = 1;
  std::vector<std::vector<std::int64_t>> scaled;

  // nullopt when an intermediate value overflows.
  std::optional<bool> in_span_fast(const std::vector<std::int64_t>& d) const {
    if (!scaled_ok) return std::nullopt;
    const std::size_t dim = d.size();
    for (std::size_t j = 0; j < dim; ++j) {
      if (is_pivot[j]) continue;
      std::int64_t acc = 0;
      if (__builtin_mul_overflow(d[j], denom, &acc)) return std::nullopt;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::int64_t dp = d[static_cast<std::size_t>(pivots[r])];
        if (dp == 0 || scaled[r][j] == 0) continue;
        std::int64_t term = 0;
        if (__builtin_mul_overflow(dp, scaled[r][j], &term) || __builtin_sub_overflow(acc, term, &acc))
          return std::nullopt;
      }
      if (acc != 0) return false;
    }
    return true;
  }

  bool insert(const std::vector<std::int64_t>& d) {
    const std::size_t dim = d.size();
    std::vector<Rational> v(d.begin(), d.end());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational f = v[static_cast<std::size_t>(pivots[r])];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (rows[r][j] != 0) v[j] -= f * rows[r][j];
    }
    int pivot = -1;
    for (std::size_t j = 0; j < dim && pivot < 0; ++j)
      if (v[j] != 0) pivot = static_cast<int>(j);
    if (pivot < 0) return false;
    const Rational lead = v[static_cast<std::size_t>(pivot)];
    for (auto& e : v) e /= lead;
    for (auto& row : rows) {
      const Rational f = row[static_cast<std::size_t>(pivot)];
      if (f == 0) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (v[j] != 0) row[j] -= f * v[j];
    }
    const auto pos = std::lower_bound(pivots.begin(), pivots.end(), pivot) - pivots.begin();
    rows.insert(rows.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, pivot);
    is_pivot[static_cast<std::size_t>(pivot)] = 1;
    rescale();
    return true;
  }

  void rescale() {
    using boost::multiprecision::cpp_int;
    cpp_int lcm = 1;
    for (const auto& row : rows)
      for (const auto& e : row) lcm = boost::multiprecision::lcm(lcm, cpp_int(denominator(e)));
    const cpp_int limit = std::numeric_limits<std::int64_t>::max();
    scaled_ok = lcm <= limit;
    scaled.assign(rows.size(), {});
    if (!scaled_ok) return;
    denom = static_cast<std::int64_t>(lcm);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r]) {
        const cpp_int value = numerator(e) * (lcm / denominator(e));
        if (abs(value) > limit) {
          scaled_ok = false;
          return;
        }
        scaled[r].push_back(static_cast<std::int64_t>(value));
      }
    }
  }
};

AffineHull::AffineHull(int dimension) : ambient_(dimension), impl_(std::make_unique<Impl>()) {
  impl_->is_pivot.assign(static_cast<std::size_t>(dimension), 0);
}
AffineHull::~AffineHull() = default;
AffineHull::AffineHull(AffineHull&&) noexcept = default;
AffineHull& AffineHull::operator=(AffineHull&&) noexcept = default;

bool AffineHull::add(std::span<const std::int64_t> point) {
  if (static_cast<int>(point.size()) != ambient_) throw ParameterError("point has the wrong dimension");
  auto& s = *impl_;
  if (!s.has_origin) {
    s.origin.assign(point.begin(), point.end());
    s.has_origin = true;
    return true;
  }
  if (static_cast<int>(s.rows.size()) == ambient_) return false;
  std::vector<std::int64_t> d(point.begin(), point.end());
  for (int j = 0; j < ambient_; ++j) d[j] -= s.origin[j];
  if (s.in_span_fast(d) == std::optional<bool>(true)) return false;
  return s.insert(d);
}

int AffineHull::dimension() const { return impl_->has_origin ? static_cast<int>(impl_->rows.size()) : -1; }

int affine_dimension(const std::vector<std::vector<std::int64_t>>& points) {
  if (points.empty()) throw ParameterError("affine dimension of an empty set");
  AffineHull hull(static_cast<int>(points.front().size()));
  for (const auto& p : points) hull.add(p);
  return hull.dimension();
}

int rf_polytope_dimension(const Instance& inst, const VertexOrdering& ord,
                          const std::function<bool(const RfPoint&)>& keep) {
  require_jobs(inst, 8);
  const MilpModel model = build_rf(inst, ord);
  const int dim = model.lp.variables();
  AffineHull hull(dim);
  std::vector<std::int64_t> lifted(static_cast<std::size_t>(dim));
  enumerate_model_points(model, [&](const std::vector<double>& point) {
    RfPoint p;
    for (int j = 0; j < dim; ++j)
      if (j != model.makespan) p.x.push_back(point[j] > 0.5 ? 1 : 0);
    p.y = static_cast<Time>(point[model.makespan]);
    if (keep && !keep(p)) return true;
    for (int j = 0; j < dim; ++j) lifted[j] = static_cast<std::int64_t>(std::llround(point[j]));
    hull.add(lifted);
    lifted[model.makespan] += 1;
    hull.add(lifted);
    return hull.dimension() < dim;
  });
  return hull.dimension();
}

std::optional<OddCycle> most_violated_odd_cycle(const ConflictGraph& sub, std::span<const double> x,
                                                double gamma) {
  const int k = sub.order();
  if (k > 9) throw SizeExceeded("odd-cycle oracle limited to 9 vertices");
  if (static_cast<int>(x.size()) != k) throw ParameterError("one weight per vertex required");
  std::optional<OddCycle> best;
  for (unsigned mask = 1; mask < (1U << k); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size < 3 || size % 2 == 0) continue;
    // Hamiltonian cycle through the lowest member, by subset dynamic programming.
    std::vector<int> members;
    for (int v = 0; v < k; ++v)
      if (mask >> v & 1U) members.push_back(v);
    const int s = static_cast<int>(members.size());
    std::vector<std::vector<char>> reach(1U << s, std::vector<char>(static_cast<std::size_t>(s), 0));
    reach[1][0] = 1;
    for (unsigned sub_mask = 1; sub_mask < (1U << s); ++sub_mask) {
      if (!(sub_mask & 1U)) continue;
      for (int end = 0; end < s; ++end) {
        if (!reach[sub_mask][end]) continue;
        for (int next = 1; next < s; ++next) {
          if (sub_mask >> next & 1U) continue;
          if (sub.adjacent(members[end], members[next])) reach[sub_mask | (1U << next)][next] = 1;
        }
      }
    }
    const unsigned full = (1U << s) - 1;
    bool cycle = false;
    for (int end = 1; end < s && !cycle; ++end) cycle = reach[full][end] && sub.adjacent(members[end], members[0]);
    if (!cycle) continue;
    double sum = 0.0;
    for (int v : members) sum += x[v];
    const double violation = sum - (size - 1) / 2.0 * gamma;
    if (!best || violation > best->violation) best = OddCycle{members, violation};
  }
  return best;
}

}  // namespace pmc
