#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lazycops/cases.hpp"

namespace lazycops {

// Cop strategies for the layered dodecahedron. All distances go through the
// arena's oracle. With one-cop-moves rules each turn moves at most one cop
// (exactly one under the exactly-one semantics).
class ArenaCops : public CopStrategy {
 public:
  ArenaCops(Arena& A, std::vector<Vertex> start) : A_(A), start_(std::move(start)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet& rules) override {
    if (static_cast<int>(start_.size()) != rules.k) throw GameError("wrong number of start cops");
    return start_;
  }
  Move move(const GameConfig& c, const RuleSet& rules) override {
    auto next = choose(c, rules);
    if (!rules.lazy_cops()) return Move::cops(next);
    int moved = 0;
    for (std::size_t i = 0; i < next.size(); ++i) moved += next[i] != c.cops[i];
    if (moved > 1) throw std::logic_error("adversary moved more than one cop");
    if (moved == 0 && rules.lazy == LazySemantics::ExactlyOne) next = forced_move(c);
    return Move::cops(next);
  }
  virtual std::string name() const = 0;

 protected:
  virtual std::vector<Vertex> choose(const GameConfig& c, const RuleSet& rules) = 0;

  // One step from u toward t along a shortest path (u itself if u == t).
  Vertex step_toward(Vertex u, Vertex t) {
    if (u == t) return u;
    auto f = A_.to(t);
    Vertex best = u;
    for (Vertex w : A_.graph().neighbors(u))
      if (f[w] + 1 == f[u] && (best == u || w < best)) best = w;
    return best;
  }
  // Index of the cop nearest to x.
  std::size_t nearest(const std::vector<Vertex>& cops, Vertex x) {
    auto f = A_.to(x);
    std::size_t best = 0;
    for (std::size_t i = 1; i < cops.size(); ++i)
      if (f[cops[i]] < f[cops[best]]) best = i;
    return best;
  }
  // The nearest cop chases when nobody is forced to do anything else.
  virtual std::vector<Vertex> forced_move(const GameConfig& c) {
    auto next = c.cops;
    std::size_t i = nearest(next, c.robber);
    Vertex s = step_toward(next[i], c.robber);
    if (s == next[i]) s = A_.graph().neighbors(next[i])[0];
    next[i] = s;
    return next;
  }
  // Nearest centre to x.
  int home_of(Vertex x) {
    auto f = A_.to(x);
    int best = 0;
    for (int g = 1; g < dodeca::kFaces; ++g)
      if (f[A_.o(g)] < f[A_.o(best)]) best = g;
    return best;
  }

  Arena& A_;
  std::vector<Vertex> start_;
};

// The nearest cop steps along a shortest path toward the robber.
class GreedyAdversary : public ArenaCops {
 public:
  using ArenaCops::ArenaCops;
  std::string name() const override { return "greedy"; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet& rules) override {
    auto next = c.cops;
    if (!rules.lazy_cops()) {
      for (auto& u : next) u = step_toward(u, c.robber);
      return next;
    }
    std::size_t i = nearest(next, c.robber);
    next[i] = step_toward(next[i], c.robber);
    return next;
  }
};

// A random cop takes a random step, or nobody moves.
class RandomWalkAdversary : public ArenaCops {
 public:
  RandomWalkAdversary(Arena& A, std::vector<Vertex> start, std::uint64_t seed)
      : ArenaCops(A, std::move(start)), rng_(seed) {}
  std::string name() const override { return "random-walk"; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet& rules) override {
    auto next = c.cops;
    auto step = [&](Vertex u) {
      const auto& nb = A_.graph().neighbors(u);
      std::uniform_int_distribution<std::size_t> pick(0, nb.size());
      std::size_t k = pick(rng_);
      return k == nb.size() ? u : nb[k];
    };
    if (!rules.lazy_cops()) {
      for (auto& u : next) u = step(u);
      return next;
    }
    std::uniform_int_distribution<std::size_t> who(0, next.size() - 1);
    std::size_t i = who(rng_);
    next[i] = step(next[i]);
    return next;
  }

 private:
  std::mt19937_64 rng_;
};

// Two cops sit on the centres nearest the robber's, the third chases.
class CenterGuardAdversary : public ArenaCops {
 public:
  using ArenaCops::ArenaCops;
  std::string name() const override { return "center-guard"; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet&) override {
    const int h = home_of(c.robber);
    auto fh = A_.to(A_.o(h));
    std::vector<int> others;
    for (int g = 0; g < dodeca::kFaces; ++g)
      if (g != h) others.push_back(g);
    std::stable_sort(others.begin(), others.end(),
                     [&](int a, int b) { return fh[A_.o(a)] < fh[A_.o(b)]; });
    std::vector<Vertex> targets{c.robber, A_.o(others[0]), A_.o(others[1])};
    return assign_and_step(c, targets);
  }

  // Cop 0's target is the robber. The guard farthest from its post moves; once
  // both are posted the chaser moves.
  std::vector<Vertex> assign_and_step(const GameConfig& c, const std::vector<Vertex>& t) {
    auto next = c.cops;
    std::size_t chaser = nearest(next, c.robber);
    std::vector<std::size_t> guards;
    for (std::size_t i = 0; i < next.size(); ++i)
      if (i != chaser) guards.push_back(i);
    // Pair guards with posts by total distance.
    if (guards.size() == 2 &&
        A_.dist(next[guards[0]], t[1]) + A_.dist(next[guards[1]], t[2]) >
            A_.dist(next[guards[0]], t[2]) + A_.dist(next[guards[1]], t[1]))
      std::swap(guards[0], guards[1]);
    std::size_t mover = chaser;
    int far = 0;
    for (std::size_t k = 0; k < guards.size() && k + 1 < t.size(); ++k) {
      int d = A_.dist(next[guards[k]], t[k + 1]);
      if (d > far) {
        far = d;
        mover = guards[k];
      }
    }
    Vertex target = mover == chaser ? c.robber : t[1 + (mover == guards[0] ? 0 : 1)];
    next[mover] = step_toward(next[mover], target);
    return next;
  }
};

// Cops take up three corners of the robber's face, then the nearest closes in.
class EncircleAdversary : public CenterGuardAdversary {
 public:
  using CenterGuardAdversary::CenterGuardAdversary;
  std::string name() const override { return "encircle"; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet&) override {
    const int h = home_of(c.robber);
    const auto& cyc = dodeca::faces()[h];
    std::vector<Vertex> posts{A_.corner(cyc[0]), A_.corner(cyc[2]), A_.corner(cyc[3])};
    auto next = c.cops;
    // Match cops to posts by the cheapest of the six assignments.
    std::array<int, 3> perm{0, 1, 2}, best{0, 1, 2};
    long best_cost = -1;
    do {
      long cost = 0;
      for (int i = 0; i < 3; ++i) cost += A_.dist(next[i], posts[perm[i]]);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    int mover = -1, far = 0;
    for (int i = 0; i < 3; ++i) {
      int d = A_.dist(next[i], posts[best[i]]);
      if (d > far) {
        far = d;
        mover = i;
      }
    }
    if (mover >= 0) {
      next[mover] = step_toward(next[mover], posts[best[mover]]);
      return next;
    }
    std::size_t i = nearest(next, c.robber);
    next[i] = step_toward(next[i], c.robber);
    return next;
  }
};

// The nearest cop closes to distance 2 and then shadows the robber, keeping
// distance 2 and staying as near as it can to the robber's nearest centre.
class MirrorProberAdversary : public ArenaCops {
 public:
  using ArenaCops::ArenaCops;
  std::string name() const override { return "mirror-prober"; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet&) override {
    auto next = c.cops;
    std::size_t i = nearest(next, c.robber);
    auto fr = A_.to(c.robber);
    if (fr[next[i]] > 2) {
      next[i] = step_toward(next[i], c.robber);
      return next;
    }
    // Among N[cop] at distance exactly 2 from the robber, the one nearest the
    // centre the robber is heading for.
    auto fc = A_.to(A_.o(home_of(c.robber)));
    Vertex best = next[i];
    for (Vertex w : A_.graph().neighbors(next[i]))
      if (fr[w] == 2 && fc[w] < fc[best]) best = w;
    next[i] = best;
    return next;
  }
};

// Cop moves supplied from outside one turn at a time (interactive play).
class RemoteCops : public CopStrategy {
 public:
  explicit RemoteCops(std::vector<Vertex> start) : start_(std::move(start)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return start_; }
  void push(Move m) { queue_.push_back(std::move(m)); }
  bool pending() const { return !queue_.empty(); }
  Move move(const GameConfig&, const RuleSet&) override {
    if (queue_.empty()) throw GameError("no cop move supplied");
    Move m = std::move(queue_.front());
    queue_.pop_front();
    return m;
  }

 private:
  std::vector<Vertex> start_;
  std::deque<Move> queue_;
};

// ---------------------------------------------------------------------------
// Scenario finder: cop positions that put the dispatcher on a given key.

struct Scenario {
  std::string label;
  Vertex robber = kNoVertex;  // o of U
  std::vector<Vertex> cops;   // lambda_1 first
  long tries = 0;
};

namespace scenario {

inline Vertex sample_vertex(Arena& A, int face, std::mt19937_64& rng) {
  const auto& G = A.geo();
  const int L = A.layers();
  const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
  int layer = std::uniform_int_distribution<int>(1, L)(rng);
  int pos = std::uniform_int_distribution<int>(0, G.ring_length(layer) - 1)(rng);
  if (mode == 0) {
    layer = L;
    pos = std::uniform_int_distribution<int>(0, G.ring_length(L) - 1)(rng);
  } else if (mode == 1) {
    // Within a few steps of one of the face's corners.
    layer = L - std::uniform_int_distribution<int>(0, 5)(rng);
    const int corner = std::uniform_int_distribution<int>(0, 4)(rng) * G.side_length(layer);
    pos = corner + std::uniform_int_distribution<int>(-6, 6)(rng);
  }
  return G.ring(face, layer, pos);
}

// Whether the far-centre shortcut would pre-empt the case table.
inline bool far_centre(Arena& A, Vertex o, const std::vector<Vertex>& cops) {
  for (int f = 0; f < dodeca::kFaces; ++f) {
    if (A.o(f) == o || A.dist(o, A.o(f)) != 196) continue;
    auto fld = A.to(A.o(f));
    bool ok = true;
    for (Vertex c : cops) ok = ok && fld[c] > 196;
    if (ok) return true;
  }
  return false;
}

}  // namespace scenario

// Random search around o of U. The letter of the label fixes how many of
// lambda_2, lambda_3 are in U; the rest come from random faces.
inline std::optional<Scenario> find_scenario(Arena& A, const std::string& label,
                                             std::uint64_t seed, long budget = 2000000) {
  if (!is_case_label(label)) throw std::invalid_argument("unknown case label " + label);
  std::mt19937_64 rng(seed);
  const Vertex o = A.o(0);
  const auto& nb = A.graph().neighbors(o);
  const int in_u = label[0] == 'A' ? 2 : label[0] == 'C' ? 1 : 0;
  Ctx c(A);
  c.robber = o;
  std::uniform_int_distribution<int> face(1, dodeca::kFaces - 1), face5(1, 5);
  std::bernoulli_distribution near(0.5);
  std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
  for (long t = 1; t <= budget; ++t) {
    std::vector<Vertex> cops{nb[pick(rng)]};
    for (int k = 0; k < 2; ++k) {
      Vertex x;
      do {
        int f = near(rng) ? face5(rng) : face(rng);
        x = scenario::sample_vertex(A, k < in_u ? 0 : f, rng);
      } while (A.dist(x, o) < 2 || (k >= in_u && A.in_face(x, 0)));
      cops.push_back(x);
    }
    c.cops = cops;
    if (scenario::far_centre(A, o, cops)) continue;
    Dispatch d = classify_case(c);
    if (d.label == label) return Scenario{label, o, cops, t};
  }
  return std::nullopt;
}

// Sets up a found scenario around whatever centre the robber waits at:
// walks lambda_2 and lambda_3 into place without touching the robber's
// neighbourhood, then brings lambda_1 next to the robber. After the robber
// leaves, chases greedily until it waits at a centre again, and repeats.
class ScriptedAdversary : public ArenaCops {
 public:
  ScriptedAdversary(Arena& A, std::vector<Vertex> start, Scenario s)
      : ArenaCops(A, std::move(start)), s_(std::move(s)) {}
  std::string name() const override { return "scripted:" + s_.label; }
  const std::string& label() const { return s_.label; }
  long setups() const { return setups_; }

 protected:
  std::vector<Vertex> choose(const GameConfig& c, const RuleSet&) override {
    const int h = centre_face(c.robber);
    const bool waiting = h >= 0 && c.robber == last_robber_;
    last_robber_ = c.robber;
    if (!waiting) {
      plan_face_ = -1;
      return chase(c);
    }
    for (int attempt = 0; attempt < 2; ++attempt) {
      if (plan_face_ != h) make_plan(c, h);
      auto next = c.cops;
      bool off = false;
      for (int k : order_) {
        const auto& path = plan_[k];
        if (next[k] == path.back()) continue;
        auto it = std::find(path.begin(), path.end(), next[k]);
        if (it == path.end()) {
          off = true;
          break;
        }
        if (k == order_[2] && it + 2 == path.end()) ++setups_;
        next[k] = *(it + 1);
        return next;
      }
      if (!off) return next;
      plan_face_ = -1;
    }
    return chase(c);
  }

 private:
  int centre_face(Vertex x) const {
    for (int f = 0; f < dodeca::kFaces; ++f)
      if (A_.o(f) == x) return f;
    return -1;
  }

  // Greedy chase that stops short of the centre nearest the robber, so the
  // robber can settle there and the scenario can be set up again.
  std::vector<Vertex> chase(const GameConfig& c) {
    auto next = c.cops;
    std::size_t i = nearest(next, c.robber);
    Vertex s = step_toward(next[i], c.robber);
    if (A_.dist(s, A_.o(home_of(c.robber))) >= 4) next[i] = s;
    return next;
  }

  // Exactly-one rules: the cop farthest from the robber steps away from it.
  std::vector<Vertex> forced_move(const GameConfig& c) override {
    auto next = c.cops;
    auto fr = A_.to(c.robber);
    std::size_t far = 0;
    for (std::size_t i = 1; i < next.size(); ++i)
      if (fr[next[i]] > fr[next[far]]) far = i;
    Vertex best = A_.graph().neighbors(next[far])[0];
    for (Vertex w : A_.graph().neighbors(next[far]))
      if (fr[w] > fr[best]) best = w;
    next[far] = best;
    return next;
  }

  // Maps the scenario from o of U to the robber's centre and matches cops to
  // posts by the cheapest assignment. Paths avoid N[o] except lambda_1's
  // final step.
  void make_plan(const GameConfig& c, int h) {
    int tau = 0;
    for (int s = 0; s < A_.sym().count(); ++s)
      if (A_.sym().map(s, A_.o(0)) == A_.o(h)) {
        tau = s;
        break;
      }
    std::vector<Vertex> posts;
    for (Vertex x : s_.cops) posts.push_back(A_.sym().map(tau, x));
    const Vertex o = A_.o(h);
    const Graph& g = A_.graph();
    std::vector<std::uint8_t> blocked(g.num_vertices(), 0);
    blocked[o] = 1;
    for (Vertex w : g.neighbors(o)) blocked[w] = 1;
    const Vertex l1 = posts[0];
    Vertex pre = kNoVertex;
    for (Vertex w : g.neighbors(l1))
      if (!blocked[w]) pre = w;
    const std::array<Vertex, 3> goal{pre, posts[1], posts[2]};
    std::array<int, 3> perm{0, 1, 2}, best{0, 1, 2};
    long best_cost = -1;
    do {
      long cost = 0;
      for (int i = 0; i < 3; ++i) cost += A_.dist(c.cops[i], goal[perm[i]]);
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    // best[i] is the role (0 = lambda_1) of engine cop i.
    plan_.assign(3, {});
    for (int i = 0; i < 3; ++i) {
      Path p = avoiding_path(c.cops[i], goal[best[i]], blocked);
      if (best[i] == 0) p.push_back(l1);
      plan_[i] = std::move(p);
      order_[best[i] == 0 ? 2 : best[i] - 1] = i;
    }
    plan_face_ = h;
  }

  Path avoiding_path(Vertex from, Vertex to, const std::vector<std::uint8_t>& blocked) {
    const Graph& g = A_.graph();
    std::vector<Vertex> parent(g.num_vertices(), kNoVertex);
    std::deque<Vertex> q{from};
    parent[from] = from;
    while (!q.empty() && parent[to] == kNoVertex) {
      Vertex u = q.front();
      q.pop_front();
      for (Vertex w : g.neighbors(u))
        if (parent[w] == kNoVertex && (!blocked[w] || w == to)) {
          parent[w] = u;
          q.push_back(w);
        }
    }
    if (parent[to] == kNoVertex) return {from};
    Path p;
    for (Vertex x = to; x != from; x = parent[x]) p.push_back(x);
    p.push_back(from);
    std::reverse(p.begin(), p.end());
    return p;
  }

  Scenario s_;
  std::vector<Path> plan_;
  std::array<int, 3> order_{0, 1, 2};  // engine cops in stepping order, lambda_1's last
  int plan_face_ = -1;
  Vertex last_robber_ = kNoVertex;
  long setups_ = 0;
};

}  // namespace lazycops
