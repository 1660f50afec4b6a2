#include "pmc/bnc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>

#include "pmc/error.hpp"
#include "pmc/heuristics.hpp"
#include "pmc/log.hpp"

namespace pmc {

const char* to_string(CutSet c) {
  switch (c) {
    case CutSet::None: return "none";
    case CutSet::Clique: return "clique";
    case CutSet::OddCycle: return "oddcycle";
    case CutSet::Both: return "both";
  }
  return "?";
}

CutSet parse_cut_set(std::string_view text) {
  for (CutSet c : {CutSet::None, CutSet::Clique, CutSet::OddCycle, CutSet::Both})
    if (text == to_string(c)) return c;
  throw ParameterError("unknown cut set '" + std::string(text) + "'");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unknown: return "unknown";
  }
  return "?";
}

int SolveReport::cuts_added() const {
  int total = 0;
  for (int c : cuts_by_class) total += c;
  return total;
}

std::optional<double> gap_percent(std::optional<double> primal, std::optional<double> dual) {
  if (!primal || !dual || *primal <= 0.0) return std::nullopt;
  return 100.0 * (*primal - *dual) / *primal;
}

namespace {

using Clock = std::chrono::steady_clock;

// Fractionality below this counts as integral, matching extraction.
constexpr double kFracTol = kIntegralityTol;
// Slack allowed before rounding an LP value up to the next integer.
constexpr double kBoundSlack = 1e-6;

Time integral_bound(double lp_value) { return static_cast<Time>(std::ceil(lp_value - kBoundSlack)); }

struct Node {
  std::vector<std::pair<int, int>> fixings;  // (column, value), each column at most once
  Time bound = 0;
  int depth = 0;
  std::int64_t seq = 0;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth > b.depth;
    return a.seq < b.seq;
  }
};

class BranchAndCut {
 public:
  BranchAndCut(const Instance& inst, const SolveConfig& config)
      : inst_(inst), config_(config), start_(Clock::now()), solver_(make_lp_solver(config.backend)) {
    report_.instance = inst.name;
    report_.formulation = config.formulation;
    report_.cuts = config.cuts;
    report_.seed = config.seed;
  }

  SolveReport run() {
    if (inst_.jobs() == 0) {
      report_.schedule = make_schedule(inst_, {});
      set_primal(0);
      set_dual(0);
      return finish(SolveStatus::Optimal);
    }
    if (!warm()) return finish(SolveStatus::Infeasible);
    build();
    floor_ = trivial_lower_bound(inst_);
    set_dual(floor_);
    if (primal_ && *primal_ <= floor_) return finish(SolveStatus::Optimal);

    Node root;
    root.bound = floor_;
    std::set<Node, NodeOrder> open;
    open.insert(root);
    std::int64_t seq = 1;
    bool stopped = false;
    while (!open.empty()) {
      if (out_of_time() || (config_.node_limit >= 0 && report_.nodes >= config_.node_limit)) {
        stopped = true;
        break;
      }
      Node node = *open.begin();
      open.erase(open.begin());
      if (primal_ && node.bound >= *primal_) continue;
      ++report_.nodes;
      auto children = process(node, report_.nodes == 1);
      for (auto& child : children) {
        child.seq = seq++;
        open.insert(std::move(child));
      }
      refresh_dual(open);
    }
    if (!stopped && lost_ && (!primal_ || *lost_ < *primal_)) stopped = true;
    if (!stopped) {
      if (!primal_) {
        report_.dual.reset();
        return finish(SolveStatus::Infeasible);
      }
      set_dual(*primal_);
      return finish(SolveStatus::Optimal);
    }
    refresh_dual(open);
    return finish(primal_ ? SolveStatus::Feasible : SolveStatus::Unknown);
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  bool out_of_time() const { return elapsed() >= config_.time_limit_s; }

  void record() { report_.trace.push_back({elapsed(), primal_, report_.dual}); }

  void set_primal(Time value) {
    if (primal_ && *primal_ <= value) return;
    primal_ = value;
    report_.primal = value;
    if (report_.dual && *report_.dual > value) report_.dual = value;
    record();
    log_line(LogLevel::Info, "incumbent " + std::to_string(value) + " at node " + std::to_string(report_.nodes));
  }

  void set_dual(Time value) {
    if (primal_) value = std::min(value, *primal_);
    if (report_.dual && *report_.dual >= value) return;
    report_.dual = value;
    record();
  }

  void refresh_dual(const std::set<Node, NodeOrder>& open) {
    Time low = open.empty() ? (primal_ ? *primal_ : floor_) : open.begin()->bound;
    if (lost_) low = std::min(low, *lost_);
    set_dual(low);
  }

  void offer(Schedule s) {
    if (!is_valid_schedule(inst_, s)) return;
    if (primal_ && s.makespan >= *primal_) return;
    report_.schedule = s;
    set_primal(s.makespan);
  }

  // False when the heuristic phase proves that no feasible schedule exists.
  bool warm() {
    const double budget = std::min(config_.heuristic_budget_s, std::max(0.0, config_.time_limit_s - elapsed()));
    WarmStartOptions options;
    options.budget_s = budget;
    options.seed = config_.seed;
    auto found = warm_start_search(inst_, options);
    if (found.schedule) offer(std::move(*found.schedule));
    return found.feasible != Colorability::No;
  }

  void build() {
    if (config_.formulation == Formulation::AF) {
      model_ = add_symmetry_breaking(build_af(inst_), config_.symmetry);
    } else {
      const VertexOrdering ord =
          config_.ordering ? *config_.ordering : clique_distance_ordering(inst_.graph, config_.seed);
      model_ = build_rf(inst_, ord);
    }
    const int cols = model_.lp.variables();
    for (int j = 0; j < cols; ++j) {
      lower_.push_back(model_.lp.lower(j));
      upper_.push_back(model_.lp.upper(j));
    }
    const bool dense = inst_.graph.density() >= config_.density_threshold;
    clique_ = dense && (config_.cuts == CutSet::Clique || config_.cuts == CutSet::Both);
    odd_ = config_.formulation == Formulation::RF &&
           (config_.cuts == CutSet::OddCycle || config_.cuts == CutSet::Both);
  }

  void apply(const Node& node) {
    for (int j : touched_) model_.lp.set_bounds(j, lower_[j], upper_[j]);
    touched_.clear();
    for (auto [j, value] : node.fixings) {
      model_.lp.set_bounds(j, value, value);
      touched_.push_back(j);
    }
  }

  LpSolution lp_solve(const Basis* warm) {
    LpSolution sol = solver_->solve(model_.lp, warm);
    report_.lp_iterations += sol.iterations;
    return sol;
  }

  // Adds violated cuts until none remain, the round cap is hit, or the node
  // is pruned. Returns false when the node became infeasible.
  bool cut_loop(LpSolution& sol, Time& bound, bool root) {
    if (!clique_ && !odd_) return true;
    for (int round = 0; round < config_.max_rounds; ++round) {
      if (out_of_time() || (primal_ && bound >= *primal_)) break;
      const FractionalPoint point{sol.x, sol.objective};
      std::vector<CutRow> found;
      if (clique_) {
        found = model_.kind == Formulation::AF
                    ? separate_clique_af(model_, point, config_.max_cuts_per_round)
                    : separate_clique_rf(model_, point, config_.max_cuts_per_round);
      }
      if (odd_) {
        try {
          for (auto& c : separate_odd_cycle_rf(model_, point, config_.max_cuts_per_round)) {
            found.push_back(c.support.size() == 3 ? lift_triangle(model_, c, point) : std::move(c));
          }
        } catch (const InvalidPoint& e) {
          log_line(LogLevel::Debug, std::string("odd-cycle separation skipped: ") + e.what());
        }
      }
      std::stable_sort(found.begin(), found.end(),
                       [](const CutRow& a, const CutRow& b) { return a.violation > b.violation; });
      int added = 0;
      for (auto& c : found) {
        if (added >= config_.max_cuts_per_round) break;
        if (c.violation <= kCutTolerance) continue;
        auto signature = std::make_pair(c.row.index, c.row.coef);
        if (!seen_.insert(std::move(signature)).second) continue;
        report_.inexact_separation = report_.inexact_separation || !c.exact;
        ++report_.cuts_by_class[static_cast<std::size_t>(c.cls)];
        model_.add_row(std::move(c.row), RowClass::Cut);
        ++added;
      }
      if (added == 0) break;
      if (root) ++report_.cut_rounds;
      sol = lp_solve(&sol.basis);
      if (sol.status == LpStatus::Infeasible) return false;
      if (sol.status != LpStatus::Optimal) throw SolverFailure("LP relaxation unbounded");
      bound = std::max(bound, integral_bound(sol.objective));
      log_line(LogLevel::Debug, "cut round " + std::to_string(round + 1) + ": " + std::to_string(added) +
                                    " cuts, lp " + std::to_string(sol.objective));
    }
    return true;
  }

  // Column to branch on, or -1 when the integer columns are integral.
  int branching_column(const std::vector<double>& x, bool representatives_only) const {
    int best = -1;
    double best_frac = kFracTol;
    for (int j = 0; j < model_.lp.variables(); ++j) {
      if (!model_.integer[j] || model_.lp.lower(j) == model_.lp.upper(j)) continue;
      const VarKey& key = model_.keys[j];
      if (representatives_only && key.a != key.b) continue;
      const double frac = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
      if (frac <= kFracTol) continue;
      const bool tie = best >= 0 && std::abs(frac - best_frac) <= 1e-12;
      if (best < 0 || (!tie && frac > best_frac) || (tie && key < model_.keys[best])) {
        best = j;
        best_frac = frac;
      }
    }
    return best;
  }

  std::vector<Node> process(const Node& node, bool root) {
    apply(node);
    LpSolution sol;
    try {
      sol = lp_solve(node.basis ? node.basis.get() : nullptr);
    } catch (const SolverFailure& e) {
      if (root) throw;
      log_line(LogLevel::Info, std::string("node LP failed: ") + e.what());
      lost_ = lost_ ? std::min(*lost_, node.bound) : node.bound;
      return {};
    }
    if (sol.status == LpStatus::Infeasible) return {};
    if (sol.status != LpStatus::Optimal) {
      if (root) throw SolverFailure("root LP relaxation unbounded");
      lost_ = lost_ ? std::min(*lost_, node.bound) : node.bound;
      return {};
    }
    Time bound = std::max(node.bound, integral_bound(sol.objective));
    if (root) report_.root_lp_before_cuts = sol.objective;
    if (root || !config_.root_only) {
      if (!cut_loop(sol, bound, root)) return {};
    }
    if (root) {
      report_.root_lp = sol.objective;
      set_dual(bound);
    }
    if (primal_ && bound >= *primal_) return {};

    int col = -1;
    if (model_.kind == Formulation::RF) col = branching_column(sol.x, true);
    if (col < 0) col = branching_column(sol.x, false);
    if (col < 0) {
      try {
        const Schedule s = extract_schedule(model_, {sol.x, sol.objective});
        offer(local_search(inst_, s, 0.05));
      } catch (const ExtractionError& e) {
        log_line(LogLevel::Info, std::string("integral LP point rejected: ") + e.what());
        lost_ = lost_ ? std::min(*lost_, bound) : bound;
      }
      return {};
    }
    auto basis = std::make_shared<const Basis>(sol.basis);
    std::vector<Node> children;
    for (int value : {1, 0}) {
      Node child;
      child.fixings = node.fixings;
      child.fixings.emplace_back(col, value);
      child.bound = bound;
      child.depth = node.depth + 1;
      child.basis = basis;
      children.push_back(std::move(child));
    }
    return children;
  }

  SolveReport finish(SolveStatus status) {
    report_.status = status;
    report_.primal = primal_;
    if (status == SolveStatus::Infeasible) {
      report_.schedule.reset();
      report_.primal.reset();
      report_.dual.reset();
    }
    if (status == SolveStatus::Optimal) report_.dual = report_.primal;
    report_.gap_pct = status == SolveStatus::Optimal
                          ? std::optional<double>(0.0)
                          : gap_percent(report_.primal ? std::optional<double>(static_cast<double>(*report_.primal))
                                                       : std::nullopt,
                                        report_.dual ? std::optional<double>(static_cast<double>(*report_.dual))
                                                     : std::nullopt);
    report_.time_s = elapsed();
    log_line(LogLevel::Info, std::string("finished ") + to_string(status) + " after " +
                                 std::to_string(report_.nodes) + " nodes");
    return report_;
  }

  const Instance& inst_;
  const SolveConfig& config_;
  Clock::time_point start_;
  std::unique_ptr<LpSolver> solver_;
  MilpModel model_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<int> touched_;
  std::set<std::pair<std::vector<int>, std::vector<double>>> seen_;
  bool clique_ = false;
  bool odd_ = false;
  Time floor_ = 0;
  std::optional<Time> primal_;
  std::optional<Time> lost_;
  SolveReport report_;
};

}  // namespace

SolveReport solve(const Instance& inst, const SolveConfig& config) { return BranchAndCut(inst, config).run(); }

std::string format_report(const SolveReport& r) {
  std::ostringstream out;
  auto opt = [](const auto& v) { return v ? format_decimal(static_cast<double>(*v)) : std::string("-"); };
  out << "instance: " << (r.instance.empty() ? "-" : r.instance) << '\n';
  out << "status: " << to_string(r.status) << '\n';
  out << "formulation: " << to_string(r.formulation) << '\n';
  out << "cuts: " << to_string(r.cuts) << '\n';
  out << "primal: " << opt(r.primal) << '\n';
  out << "dual: " << opt(r.dual) << '\n';
  out << "gap_pct: " << opt(r.gap_pct) << '\n';
  out << "nodes: " << r.nodes << '\n';
  out << "cuts_added:";
  for (std::size_t c = 0; c < kCutClasses; ++c)
    out << ' ' << to_string(static_cast<CutClass>(c)) << '=' << r.cuts_by_class[c];
  out << '\n';
  if (r.inexact_separation) out << "note: some clique separation used the greedy fallback\n";
  out << "root_lp: " << format_decimal(r.root_lp) << '\n';
  out << "time_s: " << format_decimal(r.time_s) << '\n';
  out << "seed: " << r.seed << '\n';
  if (r.schedule) {
    out << "schedule:";
    for (int k : r.schedule->machine) out << ' ' << k + 1;
    out << '\n';
  }
  return out.str();
}

}  // namespace pmc
