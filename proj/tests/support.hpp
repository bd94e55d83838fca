#pragma once

#include <map>
#include <random>
#include <set>
#include <vector>

#include "lazycops/engine.hpp"
#include "lazycops/graph.hpp"

namespace lazycops::testkit {

// Random spanning tree plus each remaining pair with probability p.
inline Graph random_connected_graph(Vertex n, double p, std::mt19937_64& rng) {
  std::set<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v < n; ++v) {
    Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    e.emplace(u, v);
  }
  std::bernoulli_distribution coin(p);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace(u, v);
  return Graph::from_edges(n, {e.begin(), e.end()});
}

inline Graph cycle(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph path(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

// Independent oracle: depth-bounded game search over ordered cop tuples with
// memoization, sharing no code with the retrograde solver beyond the engine's
// move generator. capture_within(c, d) says whether the cops can force capture
// within d half-turns.
class MinimaxOracle {
 public:
  MinimaxOracle(const Graph& g, const RuleSet& rules) : g_(g), rules_(rules) {}

  bool capture_within(const GameConfig& c, int depth) {
    if (c.captured) return true;
    if (depth == 0) return false;
    auto key = std::make_tuple(c.cops, c.robber, c.turn == Side::Cops, depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool result;
    auto moves = legal_moves(c, rules_);
    if (c.turn == Side::Cops) {
      result = false;
      for (const auto& m : moves)
        if (capture_within(apply_move(c, rules_, m), depth - 1)) {
          result = true;
          break;
        }
    } else {
      result = true;
      for (const auto& m : moves)
        if (!capture_within(apply_move(c, rules_, m), depth - 1)) {
          result = false;
          break;
        }
    }
    memo_.emplace(key, result);
    return result;
  }

  // Smallest d ≤ max_depth with capture_within(c, d), or -1.
  int rank(const GameConfig& c, int max_depth) {
    for (int d = 0; d <= max_depth; ++d)
      if (capture_within(c, d)) return d;
    return -1;
  }

 private:
  const Graph& g_;
  RuleSet rules_;
  std::map<std::tuple<std::vector<Vertex>, Vertex, bool, int>, bool> memo_;
};

// A configuration mid-game with the given side to move (bypassing placement).
inline GameConfig position(const Graph& g, std::vector<Vertex> cops, Vertex robber, Side turn) {
  GameConfig c;
  c.graph = &g;
  c.cops = std::move(cops);
  c.robber = robber;
  c.turn = turn;
  c.round = 1;
  if (c.robber_on_cop()) {
    c.captured = true;
    c.capture_round = 0;
  }
  return c;
}

}  // namespace lazycops::testkit
