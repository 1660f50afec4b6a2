#include "pmc/clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace pmc {

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const ConflictGraph& g, std::vector<Vertex> vertices, std::span<const double> weight)
      : vertices_(std::move(vertices)) {
    const int k = static_cast<int>(vertices_.size());
    weight_.resize(static_cast<std::size_t>(k));
    adj_.assign(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      weight_[i] = weight[vertices_[i]];
      for (int j = 0; j < k; ++j)
        if (i != j && g.adjacent(vertices_[i], vertices_[j])) adj_[i] |= std::uint64_t{1} << j;
    }
  }

  WeightedClique run() {
    const int k = static_cast<int>(vertices_.size());
    const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    current_.clear();
    expand(0.0, all);
    WeightedClique out;
    out.weight = best_weight_;
    for (int i : best_) out.vertices.push_back(vertices_[i]);
    return out;
  }

 private:
  // Sum over greedy color classes of the heaviest member.
  double coloring_bound(std::uint64_t pool) const {
    double bound = 0.0;
    while (pool) {
      std::uint64_t open = pool;
      double heaviest = 0.0;
      while (open) {
        const int v = std::countr_zero(open);
        heaviest = std::max(heaviest, weight_[v]);
        pool &= ~(std::uint64_t{1} << v);
        open &= ~adj_[v] & ~(std::uint64_t{1} << v);
        open &= pool;
      }
      bound += heaviest;
    }
    return bound;
  }

  void expand(double cur, std::uint64_t pool) {
    if (cur > best_weight_) {
      best_weight_ = cur;
      best_ = current_;
    }
    while (pool) {
      if (cur + coloring_bound(pool) <= best_weight_ + 1e-12) return;
      const int v = std::countr_zero(pool);
      current_.push_back(v);
      expand(cur + weight_[v], pool & adj_[v]);
      current_.pop_back();
      pool &= ~(std::uint64_t{1} << v);
    }
  }

  std::vector<Vertex> vertices_;
  std::vector<double> weight_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> current_;
  std::vector<int> best_;
  double best_weight_ = 0.0;
};

std::vector<Vertex> by_weight(std::span<const Vertex> candidates, std::span<const double> weight) {
  std::vector<Vertex> out;
  for (Vertex v : candidates)
    if (weight[v] > 0.0) out.push_back(v);
  std::stable_sort(out.begin(), out.end(),
                   [&](Vertex a, Vertex b) { return weight[a] > weight[b]; });
  return out;
}

}  // namespace

WeightedClique max_weight_clique(const ConflictGraph& g, std::span<const Vertex> candidates,
                                 std::span<const double> weight, int exact_limit) {
  auto positive = by_weight(candidates, weight);
  if (static_cast<int>(positive.size()) <= std::min(exact_limit, 64)) {
    CliqueSearch search(g, std::move(positive), weight);
    return search.run();
  }
  WeightedClique out;
  out.exact = false;
  for (Vertex v : positive) {
    const bool fits = std::all_of(out.vertices.begin(), out.vertices.end(),
                                  [&](Vertex u) { return g.adjacent(u, v); });
    if (!fits) continue;
    out.vertices.push_back(v);
    out.weight += weight[v];
  }
  return out;
}

void extend_to_maximal(const ConflictGraph& g, std::vector<Vertex>& clique,
                       std::span<const Vertex> candidates, std::span<const double> weight) {
  std::vector<Vertex> order(candidates.begin(), candidates.end());
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    if (weight[a] != weight[b]) return weight[a] > weight[b];
    return a < b;
  });
  for (Vertex v : order) {
    if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
    const bool fits =
        std::all_of(clique.begin(), clique.end(), [&](Vertex u) { return g.adjacent(u, v); });
    if (fits) clique.push_back(v);
  }
}

}  // namespace pmc
