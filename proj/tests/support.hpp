#pragma once

// Hand-rolled generators shared by unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "pmc/graph.hpp"
#include "pmc/instance.hpp"

namespace pmc::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return real(0.0, 1.0) < p; }
  std::uint64_t raw() { return rng_(); }

  ConflictGraph graph(int n, double d) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(d)) edges.emplace_back(u, v);
    return ConflictGraph(n, edges);
  }

  VertexOrdering ordering(int n) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng_);
    return VertexOrdering(order);
  }

  Instance instance(int n, double d, int m, Time pmax) {
    std::vector<Time> p(static_cast<std::size_t>(n));
    for (auto& t : p) t = integer(1, static_cast<int>(pmax));
    return make_instance("t", graph(n, d), p, m);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline ConflictGraph graph_of(int n, std::initializer_list<Edge> edges) {
  std::vector<Edge> e(edges);
  return ConflictGraph(n, e);
}

inline ConflictGraph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return ConflictGraph(n, e);
}

/// Instance whose vertex `v` has exactly `h` as positive anti-neighbourhood
/// under the identity ordering; vertex i of h becomes map[i]. When
/// `source` is false a hub adjacent to all of h precedes v.
struct Embedded {
  Instance inst;
  VertexOrdering ord;
  Vertex v = 0;
  std::vector<Vertex> map;
};

inline Embedded embed_below(const ConflictGraph& h, bool source) {
  const int k = h.order();
  const int shift = source ? 1 : 2;
  std::vector<Edge> e;
  for (auto [a, b] : h.edges()) e.emplace_back(a + shift, b + shift);
  if (!source)
    for (int i = 0; i < k; ++i) e.emplace_back(0, i + shift);
  const int n = k + shift;
  Embedded out{make_instance("embedded", ConflictGraph(n, e), std::vector<Time>(static_cast<std::size_t>(n), 1), 2),
               VertexOrdering::identity(n), source ? 0 : 1, {}};
  for (int i = 0; i < k; ++i) out.map.push_back(i + shift);
  return out;
}

}  // namespace pmc::testing
