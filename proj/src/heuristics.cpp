#include "pmc/heuristics.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

namespace pmc {

bool is_proper_coloring(const ConflictGraph& g, const Coloring& c) {
  if (static_cast<int>(c.color.size()) != g.order()) return false;
  for (int v = 0; v < g.order(); ++v)
    if (c.color[v] < 0 || c.color[v] >= c.k) return false;
  for (auto [u, v] : g.edges())
    if (c.color[u] == c.color[v]) return false;
  return true;
}

Coloring dsatur(const ConflictGraph& g) {
  const int n = g.order();
  Coloring c{std::vector<int>(static_cast<std::size_t>(n), -1), 0};
  // seen[v][col]: some neighbour of v has color col.
  std::vector<std::vector<char>> seen(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> saturation(static_cast<std::size_t>(n), 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (c.color[v] >= 0) continue;
      if (pick < 0 || saturation[v] > saturation[pick] ||
          (saturation[v] == saturation[pick] && g.degree(v) > g.degree(pick)))
        pick = v;
    }
    int col = 0;
    while (seen[pick][col]) ++col;
    c.color[pick] = col;
    c.k = std::max(c.k, col + 1);
    for (Vertex u : g.neighbors(pick)) {
      if (!seen[u][col]) {
        seen[u][col] = 1;
        ++saturation[u];
      }
    }
  }
  return c;
}

namespace {

using Clock = std::chrono::steady_clock;

class ColoringSearch {
 public:
  ColoringSearch(const ConflictGraph& g, int k, std::int64_t node_limit, double budget_s)
      : g_(g),
        k_(k),
        node_limit_(node_limit),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget_s))),
        color_(static_cast<std::size_t>(g.order()), -1),
        count_(static_cast<std::size_t>(g.order()), std::vector<int>(static_cast<std::size_t>(k), 0)),
        saturation_(static_cast<std::size_t>(g.order()), 0) {}

  ColorabilityResult run() {
    ColorabilityResult result;
    const auto clique = greedy_maximal_clique(g_);
    if (static_cast<int>(clique.size()) > k_) {
      result.verdict = Colorability::No;
      return result;
    }
    for (std::size_t i = 0; i < clique.size(); ++i) paint(clique[i], static_cast<int>(i));
    used_ = static_cast<int>(clique.size());
    const auto outcome = search(g_.order() - static_cast<int>(clique.size()));
    result.nodes = nodes_;
    if (outcome == Colorability::Yes) {
      Coloring c{color_, 0};
      for (int col : color_) c.k = std::max(c.k, col + 1);
      result.coloring = std::move(c);
    }
    result.verdict = outcome;
    return result;
  }

 private:
  void paint(Vertex v, int c) {
    color_[v] = c;
    for (Vertex u : g_.neighbors(v))
      if (count_[u][c]++ == 0) ++saturation_[u];
  }

  void unpaint(Vertex v) {
    const int c = color_[v];
    for (Vertex u : g_.neighbors(v))
      if (--count_[u][c] == 0) --saturation_[u];
    color_[v] = -1;
  }

  Colorability search(int left) {
    if (left == 0) return Colorability::Yes;
    if (++nodes_ > node_limit_ || ((nodes_ & 1023) == 0 && Clock::now() > deadline_)) return Colorability::Unknown;
    int pick = -1;
    for (int v = 0; v < g_.order(); ++v) {
      if (color_[v] >= 0) continue;
      if (pick < 0 || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && g_.degree(v) > g_.degree(pick)))
        pick = v;
    }
    if (saturation_[pick] >= k_) return Colorability::No;
    bool unknown = false;
    const int limit = std::min(used_ + 1, k_);
    for (int c = 0; c < limit; ++c) {
      if (count_[pick][c] != 0) continue;
      const int before = used_;
      if (c == used_) ++used_;
      paint(pick, c);
      const auto outcome = search(left - 1);
      if (outcome == Colorability::Yes) return outcome;
      unpaint(pick);
      used_ = before;
      if (outcome == Colorability::Unknown) {
        unknown = true;
        break;
      }
    }
    return unknown ? Colorability::Unknown : Colorability::No;
  }

  const ConflictGraph& g_;
  int k_;
  std::int64_t node_limit_;
  Clock::time_point deadline_;
  std::vector<int> color_;
  std::vector<std::vector<int>> count_;
  std::vector<int> saturation_;
  int used_ = 0;
  std::int64_t nodes_ = 0;
};

}  // namespace

ColorabilityResult k_colorable(const ConflictGraph& g, int k, std::int64_t node_limit, double budget_s) {
  ColorabilityResult result;
  if (g.order() == 0) {
    result.verdict = Colorability::Yes;
    result.coloring = Coloring{};
    return result;
  }
  if (k <= 0) {
    result.verdict = Colorability::No;
    return result;
  }
  const auto quick = dsatur(g);
  if (quick.k <= k) {
    result.verdict = Colorability::Yes;
    result.coloring = quick;
    return result;
  }
  return ColoringSearch(g, k, node_limit, budget_s).run();
}

namespace {

// Places jobs in the given order; nullopt when some job has no conflict-free machine.
std::optional<Schedule> greedy_in_order(const Instance& inst, const std::vector<Vertex>& order) {
  const int n = inst.jobs();
  std::vector<int> machine(static_cast<std::size_t>(n), -1);
  std::vector<Time> load(static_cast<std::size_t>(inst.m), 0);
  for (Vertex v : order) {
    int best = -1;
    for (int k = 0; k < inst.m; ++k) {
      bool clash = false;
      for (Vertex u : inst.graph.neighbors(v)) clash = clash || machine[u] == k;
      if (clash) continue;
      if (best < 0 || load[k] < load[best]) best = k;
    }
    if (best < 0) return std::nullopt;
    machine[v] = best;
    load[best] += inst.p[v];
  }
  return make_schedule(inst, std::move(machine));
}

std::vector<Vertex> lpt_order(const Instance& inst) {
  std::vector<Vertex> order(static_cast<std::size_t>(inst.jobs()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return inst.p[a] > inst.p[b]; });
  return order;
}

bool better(const std::optional<Schedule>& a, const std::optional<Schedule>& b) {
  return a && (!b || a->makespan < b->makespan);
}

}  // namespace

std::optional<Schedule> list_schedule(const Instance& inst, const std::optional<Coloring>& coloring) {
  std::optional<Schedule> best = greedy_in_order(inst, lpt_order(inst));
  if (coloring && coloring->k <= inst.m && is_proper_coloring(inst.graph, *coloring)) {
    std::optional<Schedule> classes = make_schedule(inst, coloring->color);
    if (better(classes, best)) best = classes;
  }
  return best;
}

namespace {

class Descent {
 public:
  Descent(const Instance& inst, const Schedule& s)
      : inst_(inst), machine_(s.machine), load_(machine_loads(inst, s.machine)) {
    const int n = inst.jobs();
    clash_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(inst.m), 0));
    for (int v = 0; v < n; ++v)
      for (Vertex u : inst.graph.neighbors(v)) ++clash_[v][machine_[u]];
  }

  // One improving step; false at a local optimum.
  bool step() {
    const auto current = score(load_);
    const Time span = current.first;
    const int n = inst_.jobs();
    for (int v = 0; v < n; ++v) {
      const int a = machine_[v];
      if (load_[a] != span) continue;
      for (int b = 0; b < inst_.m; ++b) {
        if (b == a || clash_[v][b] != 0) continue;
        if (improves(current, a, b, -inst_.p[v])) {
          move(v, b);
          return true;
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      const int a = machine_[v];
      if (load_[a] != span) continue;
      for (int w = 0; w < n; ++w) {
        const int b = machine_[w];
        if (b == a || inst_.p[w] >= inst_.p[v]) continue;
        const int shared = inst_.graph.adjacent(v, w) ? 1 : 0;
        if (clash_[v][b] - shared != 0 || clash_[w][a] - shared != 0) continue;
        if (improves(current, a, b, inst_.p[w] - inst_.p[v])) {
          move(v, b);
          move(w, a);
          return true;
        }
      }
    }
    return false;
  }

  Schedule result() const { return make_schedule(inst_, machine_); }

 private:
  using Score = std::pair<Time, int>;

  static Score score(const std::vector<Time>& load) {
    const Time span = *std::max_element(load.begin(), load.end());
    return {span, static_cast<int>(std::count(load.begin(), load.end(), span))};
  }

  // Machine a changes by +delta, machine b by -delta.
  bool improves(const Score& current, int a, int b, Time delta) {
    load_[a] += delta;
    load_[b] -= delta;
    const bool ok = score(load_) < current;
    load_[a] -= delta;
    load_[b] += delta;
    return ok;
  }

  void move(int v, int to) {
    const int from = machine_[v];
    for (Vertex u : inst_.graph.neighbors(v)) {
      --clash_[u][from];
      ++clash_[u][to];
    }
    load_[from] -= inst_.p[v];
    load_[to] += inst_.p[v];
    machine_[v] = to;
  }

  const Instance& inst_;
  std::vector<int> machine_;
  std::vector<Time> load_;
  std::vector<std::vector<int>> clash_;
};

}  // namespace

Schedule local_search(const Instance& inst, Schedule start, double budget_s) {
  if (budget_s <= 0.0 || inst.jobs() == 0) return start;
  const auto deadline = Clock::now() + std::chrono::duration<double>(budget_s);
  Descent d(inst, start);
  while (Clock::now() < deadline && d.step()) {
  }
  return d.result();
}

WarmStart warm_start_search(const Instance& inst, const WarmStartOptions& options) {
  WarmStart out;
  if (options.budget_s <= 0.0) return out;
  const auto start = Clock::now();
  const auto remaining = [&] {
    return options.budget_s - std::chrono::duration<double>(Clock::now() - start).count();
  };
  const Time floor = trivial_lower_bound(inst);
  std::optional<Coloring> coloring = dsatur(inst.graph);
  if (coloring->k > inst.m) {
    auto exact = k_colorable(inst.graph, inst.m, options.coloring_nodes, remaining());
    out.feasible = exact.verdict;
    if (exact.verdict == Colorability::No) return out;
    coloring = std::move(exact.coloring);
  } else {
    out.feasible = Colorability::Yes;
  }
  std::optional<Schedule>& best = out.schedule;
  best = list_schedule(inst, coloring);
  if (best) best = local_search(inst, *best, remaining());
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> noise(0.7, 1.3);
  for (int r = 0; r < options.restarts && remaining() > 0.0; ++r) {
    if (best && best->makespan == floor) break;
    // Longest first with multiplicative noise on the sort keys.
    std::vector<std::pair<double, Vertex>> keyed;
    for (int v = 0; v < inst.jobs(); ++v) keyed.emplace_back(-static_cast<double>(inst.p[v]) * noise(rng), v);
    std::sort(keyed.begin(), keyed.end());
    std::vector<Vertex> order;
    for (auto [key, v] : keyed) order.push_back(v);
    auto candidate = greedy_in_order(inst, order);
    if (!candidate) continue;
    candidate = local_search(inst, *candidate, remaining());
    if (better(candidate, best)) best = candidate;
  }
  if (best) out.feasible = Colorability::Yes;
  return out;
}

std::optional<Schedule> warm_start(const Instance& inst, const WarmStartOptions& options) {
  return warm_start_search(inst, options).schedule;
}

}  // namespace pmc
