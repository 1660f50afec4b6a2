#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace pmc {

/// Vertices are 0-based indices. Files and reports print them as v + 1.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph whose edges are job conflicts.
///
/// Immutable after construction. Adjacency is kept both as sorted lists and as
/// a bit matrix so that `adjacent` is a single word lookup.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(int n);

  /// Throws ParameterError on self-loops, duplicates or endpoints out of range.
  ConflictGraph(int n, std::span<const Edge> edges);

  static ConflictGraph complete(int n);

  int order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }
  std::size_t complement_edge_count() const noexcept;

  /// |E| / C(n,2); zero for graphs with fewer than two vertices.
  double density() const noexcept;

  bool adjacent(Vertex u, Vertex v) const noexcept {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  /// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
  ConflictGraph induced(std::span<const Vertex> vertices) const;
  ConflictGraph complement() const;
  ConflictGraph without(Vertex v) const;

  friend bool operator==(const ConflictGraph& a, const ConflictGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void add_edge_unchecked(Vertex u, Vertex v);

  int n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
};

/// A permutation of the vertices defining the relation u ≺ v.
class VertexOrdering {
 public:
  VertexOrdering() = default;
  /// Throws InvalidOrdering unless `order` is a permutation of 0..n-1.
  explicit VertexOrdering(std::vector<Vertex> order);

  static VertexOrdering identity(int n);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  Vertex at(int position) const { return order_[position]; }
  int position(Vertex v) const { return position_[v]; }
  bool precedes(Vertex u, Vertex v) const { return position_[u] < position_[v]; }
  const std::vector<Vertex>& order() const noexcept { return order_; }

  friend bool operator==(const VertexOrdering&, const VertexOrdering&) = default;

 private:
  std::vector<Vertex> order_;
  std::vector<int> position_;
};

/// Anti-neighborhoods of every vertex with respect to an ordering.
struct AntiNeighborhoods {
  std::vector<std::vector<Vertex>> before;  ///< N̄⁻(v), listed in ≺ order
  std::vector<std::vector<Vertex>> after;   ///< N̄⁺(v), listed in ≺ order
  std::vector<Vertex> sources;              ///< N̄⁻(v) empty, in ≺ order
  std::vector<Vertex> sinks;                ///< N̄⁺(v) empty, in ≺ order
  std::vector<char> is_source;
  std::vector<char> is_sink;
  std::size_t complement_edges = 0;
};

/// Throws InvalidOrdering when the ordering does not cover exactly g's vertices.
AntiNeighborhoods anti_neighborhoods(const ConflictGraph& g, const VertexOrdering& ord);

/// Inclusion-wise maximal clique: greedy max-degree insertion followed by
/// (1,2)-swaps. The seed only perturbs tie-breaking; seed 0 breaks ties by label.
std::vector<Vertex> greedy_maximal_clique(const ConflictGraph& g, std::uint64_t seed = 0);

/// Vertices sorted by BFS distance from `clique` (ties by label, unreachable last).
VertexOrdering distance_ordering(const ConflictGraph& g, std::span<const Vertex> clique);

/// Default ordering used by the representatives model.
VertexOrdering clique_distance_ordering(const ConflictGraph& g, std::uint64_t seed = 0);

/// Exact χ(G) by DSATUR branch-and-bound. Throws SizeExceeded if n > limit.
int exact_chromatic_number(const ConflictGraph& g, int limit = 20);

struct WebSpec {
  int q = 0;
  int l = 0;
};

struct WebGraph {
  ConflictGraph graph;
  int alpha = 0;
  int chi = 0;
  bool chi_critical = false;  ///< (q - 1) / alpha is integral
};

/// Web W^q_l (or the antiweb when `anti` is set). Vertex i of the result is
/// v_i of the usual 0..q-1 labelling. Throws InvalidSpec unless l >= 2, q >= 2l.
WebGraph make_web(WebSpec spec, bool anti);

}  // namespace pmc
