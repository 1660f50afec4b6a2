#include "pmc/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "pmc/clique.hpp"
#include "pmc/error.hpp"
#include "pmc/oracle.hpp"

namespace pmc {

const char* to_string(CutClass c) {
  switch (c) {
    case CutClass::Clique: return "clique";
    case CutClass::OddCycle: return "odd-cycle";
    case CutClass::External: return "external";
    case CutClass::AfExternal: return "af-external";
    case CutClass::Internal: return "internal";
  }
  return "?";
}

void evaluate_cut(CutRow& cut, const FractionalPoint& point) {
  const double lhs = cut.row.activity(point.values);
  cut.violation = cut.row.sense == Sense::Ge ? cut.row.rhs - lhs : lhs - cut.row.rhs;
}

namespace {

void require_kind(const MilpModel& model, Formulation kind) {
  if (model.kind != kind) {
    throw WrongKind(std::string("separator expects the ") + to_string(kind) + " model");
  }
}

void require_point(const MilpModel& model, const FractionalPoint& point) {
  if (static_cast<int>(point.values.size()) != model.lp.variables()) {
    throw InvalidPoint("point has " + std::to_string(point.values.size()) + " values for " +
                       std::to_string(model.lp.variables()) + " columns");
  }
}

double gamma_value(const MilpModel& model, const FractionalPoint& point, Vertex v) {
  const int g = model.gamma(v);
  return g < 0 ? 1.0 : point.values[g];
}

// sum coef[u] x_vu <= scale * gamma_v, over representative v.
CutRow rf_star_cut(const MilpModel& model, Vertex v, const std::vector<Vertex>& support,
                   const std::vector<double>& coef, double scale, CutClass cls) {
  CutRow cut;
  cut.cls = cls;
  cut.owner = v;
  cut.support = support;
  cut.row.sense = Sense::Le;
  for (std::size_t i = 0; i < support.size(); ++i) {
    cut.row.index.push_back(model.var(v, support[i]));
    cut.row.coef.push_back(coef[i]);
  }
  const int g = model.gamma(v);
  if (g < 0) {
    cut.row.rhs = scale;
  } else {
    cut.row.index.push_back(g);
    cut.row.coef.push_back(-scale);
    cut.row.rhs = 0.0;
  }
  return cut;
}

// Most violated first; ties by owner, then support, for a deterministic merge.
void sort_and_truncate(std::vector<CutRow>& cuts, int max_cuts) {
  std::stable_sort(cuts.begin(), cuts.end(), [](const CutRow& a, const CutRow& b) {
    if (a.violation != b.violation) return a.violation > b.violation;
    if (a.owner != b.owner) return a.owner < b.owner;
    return a.support < b.support;
  });
  if (max_cuts >= 0 && static_cast<int>(cuts.size()) > max_cuts) cuts.resize(static_cast<std::size_t>(max_cuts));
}

// Reduces an odd closed walk (first == last) to a simple odd cycle whose
// weight is at most the walk's, given nonnegative edge weights.
std::vector<int> simple_odd_cycle(std::vector<int> walk) {
  walk.pop_back();
  while (true) {
    std::map<int, std::size_t> seen;
    bool split = false;
    for (std::size_t j = 0; j < walk.size() && !split; ++j) {
      auto [it, fresh] = seen.emplace(walk[j], j);
      if (fresh) continue;
      const std::size_t i = it->second;
      std::vector<int> inner(walk.begin() + static_cast<long>(i), walk.begin() + static_cast<long>(j));
      std::vector<int> outer(walk.begin(), walk.begin() + static_cast<long>(i));
      outer.insert(outer.end(), walk.begin() + static_cast<long>(j), walk.end());
      walk = inner.size() % 2 == 1 ? std::move(inner) : std::move(outer);
      split = true;
    }
    if (!split) return walk;
  }
}

}  // namespace

std::vector<CutRow> separate_odd_cycle_rf(const MilpModel& model, const FractionalPoint& point,
                                          int max_cuts, double tol) {
  require_kind(model, Formulation::RF);
  require_point(model, point);
  const auto& g = model.instance.graph;
  const auto& an = model.anti;
  std::vector<CutRow> cuts;
  for (Vertex v : model.ordering.order()) {
    const auto& after = an.after[v];
    const int k = static_cast<int>(after.size());
    if (k < 3) continue;
    const double gamma = gamma_value(model, point, v);
    std::vector<double> xv(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) xv[i] = point.values[model.var(v, after[i])];

    // Local adjacency with weights f = (gamma - x_u - x_w) / 2.
    std::vector<std::vector<std::pair<int, double>>> adj(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (!g.adjacent(after[i], after[j])) continue;
        const double f = (gamma - xv[i] - xv[j]) / 2.0;
        if (f < -1e-9) throw InvalidPoint("point violates a clique row at representative " + std::to_string(v + 1));
        adj[i].emplace_back(j, std::max(0.0, f));
        adj[j].emplace_back(i, std::max(0.0, f));
      }
    }

    std::set<std::vector<Vertex>> seen;
    for (int s = 0; s < k; ++s) {
      // Dijkstra on the double cover; node 2*i + parity.
      std::vector<double> dist(static_cast<std::size_t>(2 * k), kInf);
      std::vector<int> prev(static_cast<std::size_t>(2 * k), -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      dist[2 * s] = 0.0;
      heap.emplace(0.0, 2 * s);
      while (!heap.empty()) {
        const auto [d, node] = heap.top();
        heap.pop();
        if (d > dist[node]) continue;
        if (node == 2 * s + 1) break;
        const int u = node / 2;
        const int parity = node % 2;
        for (auto [w, f] : adj[u]) {
          const int next = 2 * w + (1 - parity);
          if (d + f < dist[next]) {
            dist[next] = d + f;
            prev[next] = node;
            heap.emplace(dist[next], next);
          }
        }
      }
      const int target = 2 * s + 1;
      if (dist[target] >= gamma / 2.0 - tol) continue;
      std::vector<int> walk;
      for (int node = target; node >= 0; node = prev[node]) walk.push_back(node / 2);
      const auto cycle = simple_odd_cycle(walk);
      std::vector<Vertex> support;
      for (int i : cycle) support.push_back(after[i]);
      std::sort(support.begin(), support.end());
      if (!seen.insert(support).second) continue;
      const std::vector<double> ones(support.size(), 1.0);
      CutRow cut = rf_star_cut(model, v, support, ones, (static_cast<double>(support.size()) - 1.0) / 2.0,
                               CutClass::OddCycle);
      evaluate_cut(cut, point);
      if (cut.violation > tol) cuts.push_back(std::move(cut));
    }
  }
  sort_and_truncate(cuts, max_cuts);
  return cuts;
}

std::vector<CutRow> separate_clique_rf(const MilpModel& model, const FractionalPoint& point, int max_cuts,
                                       double tol) {
  require_kind(model, Formulation::RF);
  require_point(model, point);
  const auto& g = model.instance.graph;
  const int n = model.instance.jobs();
  std::vector<CutRow> cuts;
  std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
  for (Vertex v : model.ordering.order()) {
    const auto& after = model.anti.after[v];
    if (after.empty()) continue;
    std::fill(weight.begin(), weight.end(), 0.0);
    for (Vertex u : after) weight[u] = point.values[model.var(v, u)];
    const double gamma = gamma_value(model, point, v);
    auto best = max_weight_clique(g, after, weight);
    if (best.weight <= gamma + tol) continue;
    extend_to_maximal(g, best.vertices, after, weight);
    std::sort(best.vertices.begin(), best.vertices.end());
    const std::vector<double> ones(best.vertices.size(), 1.0);
    CutRow cut = rf_star_cut(model, v, best.vertices, ones, 1.0, CutClass::Clique);
    cut.exact = best.exact;
    evaluate_cut(cut, point);
    cuts.push_back(std::move(cut));
  }
  sort_and_truncate(cuts, max_cuts);
  return cuts;
}

std::vector<CutRow> separate_clique_af(const MilpModel& model, const FractionalPoint& point, int max_cuts,
                                       double tol) {
  require_kind(model, Formulation::AF);
  require_point(model, point);
  const auto& g = model.instance.graph;
  const int n = model.instance.jobs();
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[v] = v;
  std::vector<CutRow> cuts;
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int k = 0; k < model.instance.m; ++k) {
    for (int v = 0; v < n; ++v) weight[v] = point.values[model.var(v, k)];
    auto best = max_weight_clique(g, all, weight);
    if (best.weight <= 1.0 + tol) continue;
    extend_to_maximal(g, best.vertices, all, weight);
    std::sort(best.vertices.begin(), best.vertices.end());
    CutRow cut;
    cut.cls = CutClass::Clique;
    cut.owner = k;
    cut.support = best.vertices;
    cut.exact = best.exact;
    cut.row.sense = Sense::Le;
    cut.row.rhs = 1.0;
    for (Vertex u : best.vertices) {
      cut.row.index.push_back(model.var(u, k));
      cut.row.coef.push_back(1.0);
    }
    evaluate_cut(cut, point);
    cuts.push_back(std::move(cut));
  }
  sort_and_truncate(cuts, max_cuts);
  return cuts;
}

CutRow lift_triangle(const MilpModel& model, const CutRow& triangle, const FractionalPoint& point) {
  require_kind(model, Formulation::RF);
  const Vertex v = triangle.owner;
  const auto& after = model.anti.after[v];
  std::vector<double> weight(static_cast<std::size_t>(model.instance.jobs()), 0.0);
  for (Vertex u : after) weight[u] = point.values[model.var(v, u)];
  std::vector<Vertex> clique = triangle.support;
  extend_to_maximal(model.instance.graph, clique, after, weight);
  std::sort(clique.begin(), clique.end());
  const std::vector<double> ones(clique.size(), 1.0);
  CutRow cut = rf_star_cut(model, v, clique, ones, 1.0, CutClass::Clique);
  evaluate_cut(cut, point);
  return cut;
}

namespace {

// alpha_u for every u: the largest stable set of g[U] containing u.
std::vector<int> stable_through(const ConflictGraph& g, std::span<const Vertex> u_set) {
  const int k = static_cast<int>(u_set.size());
  if (k > 20) throw SizeExceeded("vertex set larger than 20");
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && g.adjacent(u_set[i], u_set[j])) adj[i] |= 1U << j;
  std::vector<int> best(static_cast<std::size_t>(k), 0);
  // Extend stable sets in increasing index order; each stable set is visited once.
  auto visit = [&](auto&& self, std::uint32_t set, std::uint32_t allowed, int size, int from) -> void {
    for (int i = 0; i < k; ++i)
      if (set >> i & 1U) best[i] = std::max(best[i], size);
    for (int i = from; i < k; ++i) {
      if (!(allowed >> i & 1U)) continue;
      self(self, set | (1U << i), allowed & ~adj[i] & ~((2U << i) - 1), size + 1, i + 1);
    }
  };
  const std::uint32_t all = k == 32 ? ~0U : (1U << k) - 1;
  visit(visit, 0U, all, 0, 0);
  return best;
}

void require_subset(std::span<const Vertex> u_set, const std::vector<char>& allowed, const char* what) {
  std::set<Vertex> distinct(u_set.begin(), u_set.end());
  if (distinct.size() != u_set.size()) throw ParameterError("vertex set has repeated members");
  for (Vertex u : u_set) {
    if (u < 0 || u >= static_cast<int>(allowed.size()) || !allowed[u]) throw ParameterError(what);
  }
}

}  // namespace

CutRow external_inequality(const MilpModel& model, Vertex v, std::span<const Vertex> u_set) {
  require_kind(model, Formulation::RF);
  if (u_set.size() > 20) throw SizeExceeded("external inequality needs |U| <= 20");
  std::vector<char> allowed(static_cast<std::size_t>(model.instance.jobs()), 0);
  for (Vertex u : model.anti.after[v]) allowed[u] = 1;
  require_subset(u_set, allowed, "U must lie in the positive anti-neighbourhood");
  const auto alpha = stable_through(model.instance.graph, u_set);
  std::vector<Vertex> support(u_set.begin(), u_set.end());
  std::vector<double> coef;
  for (int a : alpha) coef.push_back(1.0 / a);
  return rf_star_cut(model, v, support, coef, 1.0, CutClass::External);
}

CutRow af_external_inequality(const MilpModel& model, int k, std::span<const Vertex> u_set) {
  require_kind(model, Formulation::AF);
  if (u_set.size() > 20) throw SizeExceeded("external inequality needs |U| <= 20");
  if (k < 0 || k >= model.instance.m) throw ParameterError("machine out of range");
  const std::vector<char> allowed(static_cast<std::size_t>(model.instance.jobs()), 1);
  require_subset(u_set, allowed, "vertex out of range");
  const auto alpha = stable_through(model.instance.graph, u_set);
  CutRow cut;
  cut.cls = CutClass::AfExternal;
  cut.owner = k;
  cut.support.assign(u_set.begin(), u_set.end());
  cut.row.sense = Sense::Le;
  cut.row.rhs = 1.0;
  for (std::size_t i = 0; i < u_set.size(); ++i) {
    cut.row.index.push_back(model.var(u_set[i], k));
    cut.row.coef.push_back(1.0 / alpha[i]);
  }
  return cut;
}

CutRow internal_inequality(const MilpModel& model, std::span<const Vertex> u_set) {
  require_kind(model, Formulation::RF);
  if (u_set.size() > 20) throw SizeExceeded("internal inequality needs |U| <= 20");
  const int n = model.instance.jobs();
  const std::vector<char> all(static_cast<std::size_t>(n), 1);
  require_subset(u_set, all, "vertex out of range");
  std::vector<char> in_u(static_cast<std::size_t>(n), 0);
  for (Vertex u : u_set) in_u[u] = 1;

  const int chi = exact_chromatic_number(model.instance.graph.induced(u_set), 20);
  std::vector<Vertex> members(u_set.begin(), u_set.end());
  std::sort(members.begin(), members.end(),
            [&](Vertex a, Vertex b) { return model.ordering.precedes(a, b); });
  int minimal = 0;
  CutRow cut;
  cut.cls = CutClass::Internal;
  cut.support = members;
  cut.row.sense = Sense::Ge;
  for (Vertex v : members) {
    const auto& before = model.anti.before[v];
    const bool in_s_u = std::none_of(before.begin(), before.end(), [&](Vertex u) { return in_u[u]; });
    if (in_s_u) {
      ++minimal;
      continue;
    }
    cut.row.index.push_back(model.gamma(v));
    cut.row.coef.push_back(1.0);
    for (Vertex u : before) {
      if (in_u[u]) continue;
      cut.row.index.push_back(model.var(u, v));
      cut.row.coef.push_back(1.0);
    }
  }
  cut.row.rhs = static_cast<double>(chi - minimal);
  return cut;
}

CutVerdict check_cut_validity(const MilpModel& model, const Row& cut) {
  if (model.instance.jobs() > 10) throw SizeExceeded("cut validity check limited to n <= 10");
  CutVerdict verdict;
  if (auto point = find_violating_point(model, cut, 1e-9)) {
    verdict.valid = false;
    verdict.violation = cut.violation(*point);
    verdict.point = std::move(*point);
  }
  return verdict;
}

}  // namespace pmc
