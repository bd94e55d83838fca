#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lazycops/construct.hpp"
#include "lazycops/graph.hpp"

namespace lazycops {

struct ConstructionReport {
  struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
  };
  std::size_t vertices = 0, edges = 0;
  std::size_t lemma1_pairs = 0;
  bool lemma1_exhaustive = false;
  std::vector<Check> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
  }
};

namespace detail {

// BFS restricted to vertices for which keep(v) holds.
template <class Keep>
std::vector<Hops> bfs_within(const Graph& g, Vertex s, Keep keep) {
  std::vector<Hops> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Vertex u = queue[h];
    for (Vertex w : g.neighbors(u))
      if (dist[w] == kUnreachable && keep(w)) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { c_.name = std::move(name); }
  void fail(const std::string& why) {
    if (c_.pass) c_.detail = why;
    c_.pass = false;
    ++failures_;
  }
  ConstructionReport::Check done() {
    if (failures_ > 1) c_.detail += " (+" + std::to_string(failures_ - 1) + " more)";
    return c_;
  }

 private:
  ConstructionReport::Check c_;
  int failures_ = 0;
};

}  // namespace detail

// Validates a graph `g` against the layout of `d`. Normally g is d.graph();
// passing a modified graph lets mutation tests see individual checks fail.
inline ConstructionReport validate_construction(const Graph& g, const LayeredDodecahedron& d,
                                                std::uint64_t seed = 1) {
  const int L = d.layers();
  ConstructionReport rep;
  rep.vertices = g.num_vertices();
  rep.edges = g.num_edges();
  auto where = [&](int f, int n, int p) {
    return dodeca::face_name(f) + " layer " + std::to_string(n) + " pos " + std::to_string(p);
  };

  {
    detail::CheckBuilder c("counts");
    if (g.num_vertices() != LayeredDodecahedron::expected_vertices(L))
      c.fail("vertex count " + std::to_string(g.num_vertices()));
    if (g.num_edges() != LayeredDodecahedron::expected_edges(L))
      c.fail("edge count " + std::to_string(g.num_edges()));
    // Independent tally by element type.
    std::size_t by_parts = 20 + 30 * (2 * L + 1);
    for (int f = 0; f < 12; ++f) {
      by_parts += 1 + 20;
      for (int n = 1; n < L; ++n) by_parts += d.ring_length(n) + d.ring_length(n + 1);
    }
    if (by_parts != g.num_vertices()) c.fail("element tally " + std::to_string(by_parts));
    rep.checks.push_back(c.done());
  }
  if (g.num_vertices() != d.num_vertices()) return rep;

  {
    detail::CheckBuilder c("side-lengths");
    for (int f = 0; f < 12; ++f)
      for (int n = 1; n <= L; ++n) {
        int S = d.side_length(n);
        for (int j = 0; j < 5; ++j) {
          int edges = 0;
          for (int t = 0; t < S; ++t)
            if (g.has_edge(d.ring(f, n, j * S + t), d.ring(f, n, j * S + t + 1))) ++edges;
          if (edges != S) c.fail(where(f, n, j * S) + ": side has " + std::to_string(edges) + " edges");
        }
      }
    rep.checks.push_back(c.done());
  }

  {
    // A connector is a degree-2 vertex joining layer n+1 to layer n.
    detail::CheckBuilder c("connector-census");
    for (int f = 0; f < 12; ++f)
      for (int n = 1; n < L; ++n) {
        std::vector<Vertex> lower_of(d.ring_length(n + 1), kNoVertex);
        std::vector<char> on_lower(g.num_vertices(), 0);
        for (int p = 0; p < d.ring_length(n); ++p) on_lower[d.ring(f, n, p)] = 1;
        int connectors = 0;
        for (int P = 0; P < d.ring_length(n + 1); ++P) {
          for (Vertex w : g.neighbors(d.ring(f, n + 1, P))) {
            if (g.degree(w) != 2) continue;
            for (Vertex x : g.neighbors(w))
              if (on_lower[x]) {
                ++connectors;
                lower_of[P] = x;
              }
          }
        }
        if (connectors != 10 * n + 20)
          c.fail(where(f, n, 0) + ": " + std::to_string(connectors) + " connectors");
        int hex = 0, pent = 0, bad = 0;
        for (int P = 0; P < d.ring_length(n + 1); ++P) {
          Vertex a = lower_of[P], b = lower_of[(P + 1) % d.ring_length(n + 1)];
          if (a == kNoVertex || b == kNoVertex) {
            ++bad;
            continue;
          }
          if (a == b) ++pent;
          else if (g.has_edge(a, b)) ++hex;
          else ++bad;
        }
        if (hex != 5 * (2 * n + 2) || pent != 10 || bad)
          c.fail(where(f, n, 0) + ": cells " + std::to_string(hex) + " hexagons, " +
                 std::to_string(pent) + " pentagons, " + std::to_string(bad) + " malformed");
      }
    rep.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("center-pentagons");
    for (int f = 0; f < 12; ++f) {
      Vertex o = d.center(f);
      int cells = 0;
      for (int p = 0; p < 20; ++p) {
        Vertex a = d.ring(f, 1, p), b = d.ring(f, 1, p + 1);
        auto joined = [&](Vertex x) {
          for (Vertex w : g.neighbors(x))
            if (g.degree(w) == 2 && g.has_edge(w, o)) return true;
          return false;
        };
        if (joined(a) && joined(b) && g.has_edge(a, b)) ++cells;
      }
      if (cells != 20 || g.degree(o) != 20)
        c.fail(dodeca::face_name(f) + ": " + std::to_string(cells) + " center pentagons");
    }
    rep.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("spoke-length");
    for (int f = 0; f < 12; ++f) {
      auto dist = bfs(g, d.center(f));
      for (Vertex y : d.layer(f, L))
        if (dist[y] != static_cast<Hops>(2 * L)) {
          c.fail(dodeca::face_name(f) + ": outer vertex " + std::to_string(y) + " at distance " +
                 std::to_string(dist[y]));
          break;
        }
      for (int n = 1; n < L; ++n)
        if (dist[d.ring(f, n, 0)] != static_cast<Hops>(2 * n)) c.fail(where(f, n, 0) + " off spoke");
    }
    rep.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("euler-bound");
    if (g.num_edges() > 3 * g.num_vertices() - 6) c.fail("|E| exceeds 3|V|-6");
    rep.checks.push_back(c.done());
  }

  {
    detail::CheckBuilder c("lemma1-formula");
    std::vector<std::pair<int, Vertex>> ring;  // (face, vertex)
    for (int f = 0; f < 12; ++f)
      for (int n = 1; n <= L; ++n)
        for (Vertex v : d.layer(f, n)) ring.emplace_back(f, v);
    auto compare = [&](int f, Vertex x, const DistanceField& fx, Vertex y) {
      ++rep.lemma1_pairs;
      long formula = d.face_distance_formula(f, x, y);
      if (formula != long(fx[y]))
        c.fail("face " + dodeca::face_name(f) + " pair " + std::to_string(x) + "," +
               std::to_string(y) + ": formula " + std::to_string(formula) + " vs bfs " +
               std::to_string(fx[y]));
    };
    if (L <= 6) {
      rep.lemma1_exhaustive = true;
      for (auto [f, x] : ring) {
        auto fx = bfs(g, x);
        for (auto [h, y] : ring)
          if (h == f) compare(f, x, fx, y);
      }
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, ring.size() - 1);
      // 100 sources with 100 same-face targets each.
      for (int s = 0; s < 100; ++s) {
        auto [f, x] = ring[pick(rng)];
        auto fx = bfs(g, x);
        std::uniform_int_distribution<int> layer(1, L);
        for (int t = 0; t < 100; ++t) {
          int n = layer(rng);
          std::uniform_int_distribution<int> pos(0, d.ring_length(n) - 1);
          compare(f, x, fx, d.ring(f, n, pos(rng)));
        }
      }
    }
    rep.checks.push_back(c.done());
  }

  {
    // Within one face, a non-center vertex is within 2L of at most two outer
    // corners (then adjacent ones, 2L+2 apart) and of at most two middles.
    detail::CheckBuilder c("lemma4-corner-middle");
    const Hops reach = 2 * L;
    for (int f = 0; f < 12; ++f) {
      auto members = d.face_vertices(f);
      std::vector<char> in(g.num_vertices(), 0);
      for (Vertex v : members) in[v] = 1;
      auto keep = [&](Vertex w) { return in[w] != 0; };
      int S = d.side_length(L);
      std::vector<std::vector<Hops>> corner_d, middle_d;
      for (int j = 0; j < 5; ++j) {
        corner_d.push_back(detail::bfs_within(g, d.ring(f, L, j * S), keep));
        middle_d.push_back(detail::bfs_within(g, d.ring(f, L, j * S + L + 1), keep));
      }
      for (Vertex u : members) {
        if (u == d.center(f)) continue;
        std::vector<int> near_c;
        int near_m = 0;
        for (int j = 0; j < 5; ++j) {
          if (corner_d[j][u] <= reach) near_c.push_back(j);
          if (middle_d[j][u] <= reach) ++near_m;
        }
        if (near_c.size() > 2 || near_m > 2) {
          c.fail("vertex " + std::to_string(u) + " near " + std::to_string(near_c.size()) +
                 " corners, " + std::to_string(near_m) + " middles");
        } else if (near_c.size() == 2 &&
                   corner_d[near_c[0]][d.ring(f, L, near_c[1] * S)] != Hops(2 * L + 2)) {
          c.fail("vertex " + std::to_string(u) + " near two non-adjacent corners");
        }
      }
    }
    rep.checks.push_back(c.done());
  }
  return rep;
}

inline ConstructionReport validate_construction(const LayeredDodecahedron& d) {
  return validate_construction(d.graph(), d);
}

inline std::string format_report(const ConstructionReport& r) {
  std::ostringstream out;
  out << "vertices " << r.vertices << " edges " << r.edges << '\n';
  for (const auto& c : r.checks)
    out << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
        << '\n';
  out << "lemma1 pairs " << r.lemma1_pairs << (r.lemma1_exhaustive ? " (exhaustive)" : " (sampled)")
      << '\n';
  out << (r.passed() ? "RESULT pass" : "RESULT fail") << '\n';
  return out.str();
}

}  // namespace lazycops
