#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lazycops {

using Vertex = std::uint32_t;
using Hops = std::uint32_t;

inline constexpr Hops kUnreachable = std::numeric_limits<Hops>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Simple undirected graph in compressed adjacency form. Neighbor lists are
// sorted ascending, which fixes BFS visiting order.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge");

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
      g.adj_[fill[u]++] = v;
      g.adj_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i)
      std::sort(g.adj_.begin() + g.offsets_[i], g.adj_.begin() + g.offsets_[i + 1]);
    g.n_edges_ = edges.size();
    return g;
  }

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return n_edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const {
    check(v);
    return offsets_[v + 1] - offsets_[v];
  }

  bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    check(v);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Closed neighborhood membership: equal or adjacent.
  bool adjacent_or_equal(Vertex u, Vertex v) const { return u == v || has_edge(u, v); }

  void check(Vertex v) const {
    if (v >= num_vertices())
      throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }

  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(n_edges_);
    for (Vertex u = 0; u < num_vertices(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<Vertex> adj_;
  std::size_t n_edges_ = 0;
};

struct DistanceField {
  std::vector<Vertex> sources;
  std::vector<Hops> dist;

  Hops operator[](Vertex v) const { return dist.at(v); }
  std::size_t size() const { return dist.size(); }
};

namespace detail {

template <class Dist>
void bfs_into(const Graph& g, std::span<const Vertex> sources, std::vector<Dist>& dist,
              std::vector<Vertex>& queue) {
  constexpr Dist inf = std::numeric_limits<Dist>::max();
  dist.assign(g.num_vertices(), inf);
  queue.clear();
  queue.reserve(g.num_vertices());
  for (Vertex s : sources) {
    g.check(s);
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    Dist next = static_cast<Dist>(dist[u] + 1);
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == inf) {
        dist[w] = next;
        queue.push_back(w);
      }
    }
  }
}

}  // namespace detail

inline DistanceField bfs_multi(const Graph& g, std::vector<Vertex> sources) {
  if (sources.empty()) throw std::invalid_argument("empty source set");
  DistanceField f;
  std::vector<Vertex> queue;
  detail::bfs_into<Hops>(g, sources, f.dist, queue);
  f.sources = std::move(sources);
  return f;
}

inline DistanceField bfs(const Graph& g, Vertex source) { return bfs_multi(g, {source}); }

inline Hops distance(const Graph& g, Vertex u, Vertex v) {
  g.check(u);
  g.check(v);
  if (u == v) return 0;
  // Early-exit BFS; bidirectional search is not worth it at these sizes.
  std::vector<Hops> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue{u};
  dist[u] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (Vertex w : g.neighbors(x)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[x] + 1;
      if (w == v) return dist[w];
      queue.push_back(w);
    }
  }
  return kUnreachable;
}

inline Hops distance_to_set(const Graph& g, Vertex v, const std::vector<Vertex>& a) {
  if (a.empty()) throw std::invalid_argument("empty target set");
  return bfs_multi(g, a)[v];
}

inline Hops set_to_set_distance(const Graph& g, const std::vector<Vertex>& a,
                                const std::vector<Vertex>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty vertex set");
  auto f = bfs_multi(g, a);
  Hops best = kUnreachable;
  for (Vertex v : b) best = std::min(best, f[v]);
  return best;
}

// Shortest path from u to v. Each step goes to the lowest-id neighbor that is
// one hop closer to v, so the result is deterministic.
inline std::vector<Vertex> shortest_path(const Graph& g, Vertex u, Vertex v) {
  auto to_v = bfs(g, v);
  if (to_v[u] == kUnreachable) throw std::invalid_argument("vertices not connected");
  std::vector<Vertex> path{u};
  Vertex x = u;
  while (x != v) {
    for (Vertex w : g.neighbors(x)) {
      if (to_v.dist[w] + 1 == to_v.dist[x]) {
        x = w;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

// Path along a precomputed field toward its source set, lowest-id tie-break.
inline std::vector<Vertex> descend(const Graph& g, const DistanceField& field, Vertex from) {
  if (field[from] == kUnreachable) throw std::invalid_argument("vertex unreachable");
  std::vector<Vertex> path{from};
  Vertex x = from;
  while (field.dist[x] != 0) {
    for (Vertex w : g.neighbors(x)) {
      if (field.dist[w] + 1 == field.dist[x]) {
        x = w;
        break;
      }
    }
    path.push_back(x);
  }
  return path;
}

// Edge-list text format: header "p <n> <m>" followed by one "u v" line per edge.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t n = 0, m = 0;
  bool header = false;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!header) {
      std::string tag;
      if (!(ls >> tag >> n >> m) || tag != "p")
        throw std::runtime_error("edge list: expected header 'p <n> <m>' at line " +
                                 std::to_string(lineno));
      header = true;
      edges.reserve(m);
      continue;
    }
    long long u = -1, v = -1;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw std::runtime_error("edge list: malformed edge at line " + std::to_string(lineno));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!header) throw std::runtime_error("edge list: missing header");
  if (edges.size() != m)
    throw std::runtime_error("edge list: header declares " + std::to_string(m) + " edges, found " +
                             std::to_string(edges.size()));
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace lazycops
