#include "pmc/graph.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <string>

#include "pmc/error.hpp"

namespace pmc {

ConflictGraph::ConflictGraph(int n)
    : n_(n),
      words_(static_cast<std::size_t>((n + 63) / 64)),
      adj_(static_cast<std::size_t>(n)),
      bits_(static_cast<std::size_t>(n) * words_, 0) {
  if (n < 0) throw ParameterError("negative vertex count");
}

ConflictGraph::ConflictGraph(int n, std::span<const Edge> edges) : ConflictGraph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ParameterError("edge endpoint out of range: " + std::to_string(u + 1) + " " +
                           std::to_string(v + 1));
    }
    if (u == v) throw ParameterError("self-loop on vertex " + std::to_string(u + 1));
    if (adjacent(u, v)) {
      throw ParameterError("duplicate edge " + std::to_string(u + 1) + " " + std::to_string(v + 1));
    }
    add_edge_unchecked(u, v);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

ConflictGraph ConflictGraph::complete(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return ConflictGraph(n, edges);
}

void ConflictGraph::add_edge_unchecked(Vertex u, Vertex v) {
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++m_;
}

std::size_t ConflictGraph::complement_edge_count() const noexcept {
  const auto n = static_cast<std::size_t>(n_);
  return n * (n > 0 ? n - 1 : 0) / 2 - m_;
}

double ConflictGraph::density() const noexcept {
  if (n_ < 2) return 0.0;
  const double pairs = 0.5 * n_ * (n_ - 1);
  return static_cast<double>(m_) / pairs;
}

std::vector<Edge> ConflictGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

ConflictGraph ConflictGraph::induced(std::span<const Vertex> vertices) const {
  const int k = static_cast<int>(vertices.size());
  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (adjacent(vertices[i], vertices[j])) edges.emplace_back(i, j);
  return ConflictGraph(k, edges);
}

ConflictGraph ConflictGraph::complement() const {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n_; ++u)
    for (Vertex v = u + 1; v < n_; ++v)
      if (!adjacent(u, v)) edges.emplace_back(u, v);
  return ConflictGraph(n_, edges);
}

ConflictGraph ConflictGraph::without(Vertex v) const {
  std::vector<Vertex> keep;
  for (Vertex u = 0; u < n_; ++u)
    if (u != v) keep.push_back(u);
  return induced(keep);
}

VertexOrdering::VertexOrdering(std::vector<Vertex> order) : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  position_.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = order_[i];
    if (v < 0 || v >= n || position_[v] != -1) {
      throw InvalidOrdering("ordering is not a permutation of the vertices");
    }
    position_[v] = i;
  }
}

VertexOrdering VertexOrdering::identity(int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return VertexOrdering(std::move(order));
}

AntiNeighborhoods anti_neighborhoods(const ConflictGraph& g, const VertexOrdering& ord) {
  const int n = g.order();
  if (ord.size() != n) {
    throw InvalidOrdering("ordering has " + std::to_string(ord.size()) + " vertices, graph has " +
                          std::to_string(n));
  }
  AntiNeighborhoods out;
  out.before.resize(static_cast<std::size_t>(n));
  out.after.resize(static_cast<std::size_t>(n));
  out.is_source.assign(static_cast<std::size_t>(n), 0);
  out.is_sink.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const Vertex v = ord.at(i);
    for (int j = i + 1; j < n; ++j) {
      const Vertex u = ord.at(j);
      if (g.adjacent(u, v)) continue;
      out.after[v].push_back(u);
      out.before[u].push_back(v);
      ++out.complement_edges;
    }
  }
  for (int i = 0; i < n; ++i) {
    const Vertex v = ord.at(i);
    if (out.before[v].empty()) {
      out.sources.push_back(v);
      out.is_source[v] = 1;
    }
    if (out.after[v].empty()) {
      out.sinks.push_back(v);
      out.is_sink[v] = 1;
    }
  }
  return out;
}

namespace {

// Grows `clique` greedily within the common neighborhood of its members.
void grow_clique(const ConflictGraph& g, std::vector<Vertex>& clique,
                 const std::vector<std::uint64_t>& tie_key) {
  const int n = g.order();
  std::vector<char> cand(static_cast<std::size_t>(n), 1);
  for (Vertex k : clique) {
    for (Vertex v = 0; v < n; ++v)
      if (v == k || !g.adjacent(v, k)) cand[v] = 0;
  }
  for (;;) {
    Vertex best = -1;
    int best_deg = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!cand[v]) continue;
      int deg = 0;
      for (Vertex w : g.neighbors(v)) deg += cand[w];
      if (deg > best_deg || (deg == best_deg && tie_key[v] < tie_key[best])) {
        best = v;
        best_deg = deg;
      }
    }
    if (best < 0) break;
    clique.push_back(best);
    for (Vertex v = 0; v < n; ++v)
      if (v == best || !g.adjacent(v, best)) cand[v] = 0;
  }
}

}  // namespace

std::vector<Vertex> greedy_maximal_clique(const ConflictGraph& g, std::uint64_t seed) {
  const int n = g.order();
  if (n == 0) return {};
  std::vector<std::uint64_t> tie_key(static_cast<std::size_t>(n));
  std::iota(tie_key.begin(), tie_key.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (auto& k : tie_key) k = rng();
  }

  std::vector<Vertex> clique;
  grow_clique(g, clique, tie_key);

  // (1,2)-swaps: drop one member, add two adjacent vertices that see the rest.
  bool improved = true;
  while (improved) {
    improved = false;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Vertex k : clique) in[k] = 1;
    for (std::size_t drop = 0; drop < clique.size() && !improved; ++drop) {
      std::vector<Vertex> tight;
      for (Vertex v = 0; v < n; ++v) {
        if (in[v] || g.adjacent(v, clique[drop])) continue;
        bool sees_rest = true;
        for (std::size_t i = 0; i < clique.size() && sees_rest; ++i)
          if (i != drop && !g.adjacent(v, clique[i])) sees_rest = false;
        if (sees_rest) tight.push_back(v);
      }
      for (std::size_t a = 0; a < tight.size() && !improved; ++a) {
        for (std::size_t b = a + 1; b < tight.size(); ++b) {
          if (!g.adjacent(tight[a], tight[b])) continue;
          clique.erase(clique.begin() + static_cast<std::ptrdiff_t>(drop));
          clique.push_back(tight[a]);
          clique.push_back(tight[b]);
          grow_clique(g, clique, tie_key);
          improved = true;
          break;
        }
      }
    }
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

VertexOrdering distance_ordering(const ConflictGraph& g, std::span<const Vertex> clique) {
  const int n = g.order();
  constexpr int kUnreached = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n), kUnreached);
  std::queue<Vertex> frontier;
  for (Vertex k : clique) {
    if (dist[k] == 0) continue;
    dist[k] = 0;
    frontier.push(k);
  }
  while (!frontier.empty()) {
    const Vertex v = frontier.front();
    frontier.pop();
    for (Vertex w : g.neighbors(v)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[v] + 1;
      frontier.push(w);
    }
  }
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  return VertexOrdering(std::move(order));
}

VertexOrdering clique_distance_ordering(const ConflictGraph& g, std::uint64_t seed) {
  if (g.order() == 0) return VertexOrdering{};
  const auto clique = greedy_maximal_clique(g, seed);
  return distance_ordering(g, clique);
}

namespace {

class ColoringSearch {
 public:
  explicit ColoringSearch(const ConflictGraph& g)
      : g_(g), n_(g.order()), color_(static_cast<std::size_t>(n_), -1),
        saturation_(static_cast<std::size_t>(n_), 0) {}

  int run(int upper, int lower) {
    best_ = upper;
    lower_ = lower;
    search(0, 0);
    return best_;
  }

 private:
  void search(int colored, int used) {
    if (used >= best_ || best_ == lower_) return;
    if (colored == n_) {
      best_ = used;
      return;
    }
    Vertex pick = -1;
    int pick_sat = -1;
    for (Vertex v = 0; v < n_; ++v) {
      if (color_[v] >= 0) continue;
      const int sat = std::popcount(saturation_[v]);
      if (sat > pick_sat || (sat == pick_sat && g_.degree(v) > g_.degree(pick))) {
        pick = v;
        pick_sat = sat;
      }
    }
    const int limit = std::min(used + 1, best_ - 1);
    for (int c = 0; c < limit; ++c) {
      if ((saturation_[pick] >> c) & 1U) continue;
      assign(pick, c, colored, std::max(used, c + 1));
      if (best_ == lower_) return;
    }
  }

  void assign(Vertex v, int c, int colored, int used) {
    color_[v] = c;
    std::vector<std::pair<Vertex, std::uint64_t>> saved;
    for (Vertex w : g_.neighbors(v)) {
      if (color_[w] >= 0) continue;
      saved.emplace_back(w, saturation_[w]);
      saturation_[w] |= std::uint64_t{1} << c;
    }
    search(colored + 1, used);
    for (auto [w, s] : saved) saturation_[w] = s;
    color_[v] = -1;
  }

  const ConflictGraph& g_;
  int n_;
  std::vector<int> color_;
  std::vector<std::uint64_t> saturation_;
  int best_ = 0;
  int lower_ = 0;
};

}  // namespace

int exact_chromatic_number(const ConflictGraph& g, int limit) {
  const int n = g.order();
  if (n > limit || n > 64) {
    throw SizeExceeded("exact coloring limited to " + std::to_string(std::min(limit, 64)) +
                       " vertices, got " + std::to_string(n));
  }
  if (n == 0) return 0;
  const auto clique = greedy_maximal_clique(g);
  ColoringSearch search(g);
  return search.run(n + 1, static_cast<int>(clique.size()));
}

WebGraph make_web(WebSpec spec, bool anti) {
  const int q = spec.q;
  const int l = spec.l;
  if (l < 2 || q < 2 * l) {
    throw InvalidSpec("web parameters need l >= 2 and q >= 2l (q=" + std::to_string(q) +
                      ", l=" + std::to_string(l) + ")");
  }
  std::vector<Edge> edges;
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      const int gap = j - i;
      const bool in_web = l <= gap && gap <= q - l;
      if (in_web != anti) edges.emplace_back(i, j);
    }
  }
  WebGraph out;
  out.graph = ConflictGraph(q, edges);
  out.alpha = anti ? q / l : l;
  out.chi = (q + out.alpha - 1) / out.alpha;
  out.chi_critical = (q - 1) % out.alpha == 0;
  return out;
}

}  // namespace pmc
