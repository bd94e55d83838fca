#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

#include "lazycops/tactics.hpp"

using namespace lazycops;

namespace {

Arena& arena49() {
  static Arena A(49);
  return A;
}

Arena& arena3() {
  static Arena A(3);
  return A;
}

const RuleSet kLazy{Variant::OneCopMoves, LazySemantics::AtMostOne, 3};

// Runs one program from `start`, then stays put.
class ProgramRobber : public RobberStrategy {
 public:
  using Factory = std::function<Program(View)>;
  ProgramRobber(Arena& A, Vertex start, Factory f) : ctx(A), start_(start), f_(std::move(f)) {}

  Vertex place(const GameConfig&, const RuleSet&) override {
    ctx.robber = start_;
    return start_;
  }
  Vertex move(const GameConfig& c, const RuleSet&) override {
    ctx.observe(c);
    ctx.check_guarantee();
    if (!started_) {
      runner_ = Runner(f_(View(ctx, 0)));
      started_ = true;
    }
    Vertex v = runner_.active() ? runner_.next() : kNoVertex;
    if (v == kNoVertex) {
      if (!done) {
        outcome = runner_.outcome();
        done = true;
        done_round = c.round;
      }
      v = ctx.robber;
    }
    ctx.robber_stepped();
    return v;
  }

  Ctx ctx;
  Outcome outcome;
  bool done = false;
  int done_round = -1;

 private:
  Vertex start_;
  Factory f_;
  Runner runner_;
  bool started_ = false;
};

class StaticCops : public CopStrategy {
 public:
  explicit StaticCops(std::vector<Vertex> at) : at_(std::move(at)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return at_; }
  Move move(const GameConfig& c, const RuleSet&) override { return Move::cops(c.cops); }

 private:
  std::vector<Vertex> at_;
};

// Cop 0 answers every probe out of `corner` by stepping toward the centre the
// robber is heading for, and walks back home while the robber sits on the
// corner. It ignores the robber once it is more than 3 edges from the corner.
class ProbeMirrorCop : public CopStrategy {
 public:
  ProbeMirrorCop(Arena& A, std::vector<Vertex> start, Vertex corner)
      : A_(A), start_(std::move(start)), corner_(corner) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return start_; }
  Move move(const GameConfig& c, const RuleSet&) override {
    auto next = c.cops;
    if (A_.dist(c.robber, corner_) > 3) return Move::cops(next);
    Vertex target = start_[0];
    if (c.robber != corner_) {
      int best = -1, bd = 1 << 20;
      for (int f : dodeca::faces_of_corner(static_cast<int>(corner_))) {
        int d = A_.dist(c.robber, A_.o(f));
        if (d < bd) {
          bd = d;
          best = f;
        }
      }
      target = A_.o(best);
    }
    auto f = A_.to(target);
    for (Vertex w : A_.graph().neighbors(next[0]))
      if (f[w] + 1 == f[next[0]]) {
        next[0] = w;
        break;
      }
    return Move::cops(next);
  }

 private:
  Arena& A_;
  std::vector<Vertex> start_;
  Vertex corner_;
};

// Cops that replay a fixed list of positions, then stand still.
class ReplayCops : public CopStrategy {
 public:
  ReplayCops(std::vector<Vertex> start, std::vector<std::vector<Vertex>> replies)
      : start_(std::move(start)), replies_(std::move(replies)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return start_; }
  Move move(const GameConfig& c, const RuleSet&) override {
    if (i_ < replies_.size()) return Move::cops(replies_[i_++]);
    return Move::cops(c.cops);
  }

 private:
  std::vector<Vertex> start_;
  std::vector<std::vector<Vertex>> replies_;
  std::size_t i_ = 0;
};

Program two(Vertex a, Vertex b) {
  co_yield a;
  co_yield b;
  co_return Outcome::centre(3);
}

Program nested() {
  Outcome r = co_await two(1, 2);
  if (r.kind == Outcome::Centre && r.face == 3) co_yield 9;
  co_return Outcome::retreat();
}

Program throws_after_one() {
  co_yield 4;
  throw std::runtime_error("boom");
}

// Straightforward Algorithm 1 loop, written from the pseudocode.
struct LoopResult {
  int r;
  bool broke;
  int legs;
};
LoopResult algorithm1(int k, int l2, const std::vector<int>& j) {
  int r = 49;
  for (int i = 1; i <= k - l2 + 1; ++i) {
    r = k - l2 + 5 - i;
    if (j[i - 1] == i - 1) return {r, true, i};
  }
  return {r, false, k - l2 + 1};
}

}  // namespace

// ---------------------------------------------------------------------------
// Coroutine plumbing

TEST(Runner, NestedProgramsYieldInOrder) {
  Runner run(nested());
  EXPECT_EQ(run.next(), 1u);
  EXPECT_EQ(run.next(), 2u);
  EXPECT_EQ(run.next(), 9u);
  EXPECT_EQ(run.next(), kNoVertex);
  EXPECT_FALSE(run.active());
  EXPECT_EQ(run.outcome().kind, Outcome::Retreat);
}

TEST(Runner, ExceptionsReachTheCaller) {
  Runner run(throws_after_one());
  EXPECT_EQ(run.next(), 4u);
  EXPECT_THROW(run.next(), std::runtime_error);
  EXPECT_FALSE(run.active());
}

TEST(Runner, EmptyRunnerIsInactive) {
  Runner run;
  EXPECT_FALSE(run.active());
  EXPECT_EQ(run.next(), kNoVertex);
}

// ---------------------------------------------------------------------------
// Algorithm 1

TEST(ComputeR, BreaksOnFirstLeg) {
  auto r = compute_r(52, 49, [](int) { return 0; });
  EXPECT_EQ(r.r, 7);
  EXPECT_TRUE(r.broke);
  EXPECT_EQ(r.legs, 1);
}

TEST(ComputeR, NeverBreaksEndsAtFour) {
  for (int k = 49; k <= 94; ++k) {
    auto r = compute_r(k, 49, [](int i) { return i; });
    EXPECT_EQ(r.r, 4);
    EXPECT_FALSE(r.broke);
    EXPECT_EQ(r.legs, k - 49 + 1);
  }
}

TEST(ComputeR, RejectsFirstLayerBeyond49) {
  EXPECT_THROW(compute_r(98, 49, [](int) { return 0; }), PreconditionError);
}

TEST(ComputeR, RejectsDecreasingSkips) {
  RSchedule s(60, 49);
  EXPECT_FALSE(s.record(3));
  EXPECT_THROW(s.record(2), std::invalid_argument);
}

TEST(ComputeR, RandomInputsMatchTheLoop) {
  std::mt19937_64 rng(11);
  int broke = 0;
  for (int t = 0; t < 10000; ++t) {
    int l2 = std::uniform_int_distribution<int>(0, 60)(rng);
    int k = std::uniform_int_distribution<int>(l2, std::min(98, l2 + 45))(rng);
    std::vector<int> j;
    int cur = 0;
    for (int i = 0; i <= k - l2 + 1; ++i) {
      cur += std::uniform_int_distribution<int>(0, 2)(rng);
      j.push_back(cur);
    }
    auto want = algorithm1(k, l2, j);
    auto got = compute_r(k, l2, [&](int i) { return j[i - 1]; });
    ASSERT_GE(got.r, 4);
    ASSERT_LE(got.r, 49);
    ASSERT_EQ(got.r, want.r);
    ASSERT_EQ(got.broke, want.broke);
    ASSERT_EQ(got.legs, want.legs);
    if (got.broke) {
      ++broke;
      ASSERT_EQ(got.r, k - l2 + 4 - j[got.legs - 1]);
    }
  }
  EXPECT_GT(broke, 1000);
}

// ---------------------------------------------------------------------------
// Lemma-2 certificate

TEST(SafeReach, BasicCases) {
  Arena& A = arena3();
  const auto& g = A.graph();
  Path p = shortest_path(A, A.o(0), A.v(1));
  EXPECT_FALSE(safe_reach_check(A, p, {p.back()}));
  EXPECT_TRUE(safe_reach_check(A, p, {}));
  EXPECT_THROW(safe_reach_check(A, {}, {}), std::invalid_argument);
  Path bad{A.o(0), A.v(1)};
  ASSERT_FALSE(g.has_edge(A.o(0), A.v(1)));
  EXPECT_THROW(safe_reach_check(A, bad, {}), std::invalid_argument);
  // A cop exactly one farther than the path is long cannot intercept.
  const int n = length(p);
  auto f = bfs(g, p.back());
  Vertex edge = kNoVertex, inside = kNoVertex;
  for (Vertex x = 0; x < g.num_vertices(); ++x) {
    if (f.dist[x] == static_cast<Hops>(n + 1) && edge == kNoVertex) edge = x;
    if (f.dist[x] == static_cast<Hops>(n) && inside == kNoVertex) inside = x;
  }
  EXPECT_TRUE(safe_reach_check(A, p, {edge}));
  EXPECT_FALSE(safe_reach_check(A, p, {inside}));
}

TEST(SafeReach, CertifiedPathsSurviveInterceptors) {
  Arena& A = arena3();
  const Graph& g = A.graph();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Vertex> pv(0, static_cast<Vertex>(g.num_vertices() - 1));
  int certified_runs = 0;
  for (int t = 0; t < 10000; ++t) {
    Vertex start = pv(rng);
    int n = std::uniform_int_distribution<int>(1, 14)(rng);
    Path p{start};
    for (int i = 0; i < n; ++i) {
      auto nb = g.neighbors(p.back());
      int pick = std::uniform_int_distribution<int>(0, static_cast<int>(nb.size()))(rng);
      p.push_back(pick == static_cast<int>(nb.size()) ? p.back() : nb[pick]);
    }
    std::vector<Vertex> cops;
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < k; ++i) {
      Vertex c = pv(rng);
      while (c == start) c = pv(rng);
      cops.push_back(c);
    }
    if (!safe_reach_check(A, p, cops)) continue;
    ++certified_runs;
    // Two interceptors, all cops moving every round: toward the path end and
    // toward the robber.
    for (int mode = 0; mode < 2; ++mode) {
      auto cur = cops;
      auto to_end = bfs(g, p.back());
      for (std::size_t i = 1; i < p.size(); ++i) {
        Vertex r = p[i];
        for (Vertex c : cur) ASSERT_NE(c, r) << "robber walked onto a cop";
        auto to_robber = bfs(g, r);
        const auto& field = mode == 0 ? to_end : to_robber;
        for (Vertex& c : cur) {
          for (Vertex w : g.neighbors(c))
            if (field.dist[w] < field.dist[c]) {
              c = w;
              break;
            }
          ASSERT_NE(c, r) << "cop caught the robber on a certified path";
        }
      }
    }
  }
  EXPECT_GT(certified_runs, 1000);
}

TEST(ReachCentre, Examples) {
  Arena& A = arena49();
  const Vertex o = A.o(0), o1 = A.o(1);
  ASSERT_EQ(A.dist(o, o1), 196);
  auto f = A.to(o1);
  std::vector<Vertex> far;
  for (int g = 0; g < dodeca::kFaces; ++g)
    if (f[A.o(g)] > 196) far.push_back(A.o(g));
  ASSERT_GE(far.size(), 3u);
  EXPECT_TRUE(reach_centre_check(A, o, o1, {far[0], far[1], far[2]}));
  EXPECT_FALSE(reach_centre_check(A, o, o1, {far[0], o1}));
  Vertex tie = kNoVertex;
  for (Vertex x = 0; x < A.graph().num_vertices() && tie == kNoVertex; ++x)
    if (f[x] == 196 && x != o) tie = x;
  EXPECT_FALSE(reach_centre_check(A, o, o1, {tie}));
}

TEST(Guarantee, ViolationIsCountedOnce) {
  Arena& A = arena3();
  Ctx c(A);
  Vertex end = A.o(1);
  auto f = bfs(A.graph(), end);
  Vertex near = kNoVertex;
  for (Vertex x = 0; x < A.graph().num_vertices(); ++x)
    if (f.dist[x] == 3) near = x;
  c.cops = {A.o(5)};
  c.guarantee(end, 4);
  c.check_guarantee();
  EXPECT_EQ(c.guarantee_violations, 0);
  c.cops = {near};
  c.check_guarantee();
  EXPECT_EQ(c.guarantee_violations, 1);
  c.check_guarantee();
  EXPECT_EQ(c.guarantee_violations, 1);
  EXPECT_EQ(c.guarantee_checks, 2);
}

// ---------------------------------------------------------------------------
// Leaving a centre

TEST(Depart, ReturnsToTheCentreWhenTheCopBacksOff) {
  Arena& A = arena49();
  const auto& G = A.geo();
  const Vertex o = A.o(0);
  Path spoke = G.spoke(0, A.v(1));
  // lambda_1 next to o away from the spoke; a second cop sits at v1.
  Vertex l1 = kNoVertex;
  for (Vertex w : A.graph().neighbors(o))
    if (!A.graph().adjacent_or_equal(w, spoke[1])) l1 = w;
  ASSERT_NE(l1, kNoVertex);
  Vertex back = kNoVertex;
  for (Vertex w : A.graph().neighbors(l1))
    if (A.dist(w, o) == 2 && A.dist(w, spoke[1]) >= 2) back = w;
  ASSERT_NE(back, kNoVertex);
  std::vector<Vertex> cops{l1, A.v(1), A.o(11)};
  ReplayCops cp(cops, {{back, A.v(1), A.o(11)}});
  ProgramRobber r(A, o, [&](View v) { return depart(v, spoke, "t"); });
  run_match(A.graph(), "layered:49", kLazy, cp, r, 5, false);
  ASSERT_TRUE(r.done);
  EXPECT_EQ(r.outcome.kind, Outcome::Retreat);
  EXPECT_EQ(r.ctx.robber, o);
}

TEST(Depart, GoesOnGuardedWhenTheCentreIsCovered) {
  Arena& A = arena49();
  const auto& G = A.geo();
  const Vertex o = A.o(0);
  Path spoke = G.spoke(0, A.v(1));
  Vertex l1 = kNoVertex;
  for (Vertex w : A.graph().neighbors(o))
    if (!A.graph().adjacent_or_equal(w, spoke[1])) l1 = w;
  // Uncertified: a cop 97 from v1 on the far side; lambda_1 stays next to o.
  Vertex lurker = kNoVertex;
  auto fv = A.to(A.v(1));
  for (Vertex x : G.face_vertices(1))
    if (fv[x] == 97 && A.dist(x, o) > 150) lurker = x;
  ASSERT_NE(lurker, kNoVertex);
  StaticCops cp({l1, lurker, A.o(11)});
  ProgramRobber r(A, o, [&](View v) { return depart(v, spoke, "t"); });
  run_match(A.graph(), "layered:49", kLazy, cp, r, 120, false);
  ASSERT_TRUE(r.done);
  EXPECT_EQ(r.outcome.kind, Outcome::Done);
  EXPECT_EQ(r.ctx.robber, A.v(1));
  bool guarded = false;
  for (const auto& e : r.ctx.log) guarded = guarded || e.event == "guarded";
  EXPECT_TRUE(guarded);
}

TEST(Depart, GuardedStartKeepsLengthAndTarget) {
  Arena& A = arena49();
  const auto& G = A.geo();
  Ctx c(A);
  c.robber = A.o(0);
  for (Vertex l1 : A.graph().neighbors(A.o(0))) {
    c.cops = {l1, A.o(11), A.o(10)};
    View v(c, 0);
    for (int i = 1; i <= 5; ++i) {
      Path p = G.spoke(0, A.v(i));
      Path q = guarded_start(v, p);
      ASSERT_EQ(q.size(), p.size());
      ASSERT_EQ(q.back(), p.back());
      ASSERT_EQ(q.front(), p.front());
      for (std::size_t k = 1; k < q.size(); ++k) ASSERT_TRUE(A.graph().has_edge(q[k - 1], q[k]));
      if (guard_ok(v, p[1])) {
        EXPECT_EQ(q, p);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Corner tactics

TEST(StrategyAtCorner, AgreesWithIndependentPredicates) {
  Arena& A = arena49();
  const Graph& g = A.graph();
  const Vertex v = A.v(1);
  auto F = dodeca::faces_of_corner(static_cast<int>(v));
  auto fv = bfs(g, v);
  std::map<int, DistanceField> face;
  for (int f : F) face.emplace(f, bfs_multi(g, A.geo().face_vertices(f)));
  auto dU = [&](Vertex c, std::initializer_list<int> fs) {
    Hops m = kUnreachable;
    for (int f : fs) m = std::min(m, face.at(f).dist[c]);
    return m;
  };
  std::vector<Vertex> ball;
  for (Vertex x = 0; x < g.num_vertices(); ++x)
    if (fv.dist[x] <= 3) ball.push_back(x);
  ball.push_back(A.o(11));
  std::map<Tactic::Kind, int> seen;
  for (std::size_t a = 0; a < ball.size(); ++a)
    for (std::size_t b = a; b < ball.size(); ++b)
      for (Vertex third : {A.o(11), A.o(8), ball[(a * 7 + b) % ball.size()]}) {
        std::vector<Vertex> cops{ball[a], ball[b], third};
        bool on = false;
        for (Vertex c : cops) on = on || c == v;
        if (on) continue;
        bool pair = false;
        for (int i = 0; i < 3 && !pair; ++i)
          for (int j = i + 1; j < 3 && !pair; ++j)
            for (int t = 0; t < 3 && !pair; ++t) {
              if (fv.dist[cops[t]] < 2) continue;
              bool ok = true;
              for (int o = 0; o < 3; ++o)
                if (o != t) ok = ok && dU(cops[o], {F[i], F[j]}) >= 2;
              pair = ok;
            }
        bool three = false;
        for (int out = 0; out < 3 && !three; ++out) {
          if (dU(cops[out], {F[0], F[1], F[2]}) < 2) continue;
          bool ok = true;
          for (int i = 0; i < 3; ++i)
            if (i != out) ok = ok && fv.dist[cops[i]] >= 2;
          three = ok;
        }
        Tactic t = strategy_at_corner(A, v, cops);
        Tactic::Kind want =
            pair ? Tactic::Oscillate : three ? Tactic::ThreeFace : Tactic::CenterApproach;
        ASSERT_EQ(t.kind, want);
        ++seen[t.kind];
        if (t.kind == Tactic::CenterApproach && t.certified) {
          ASSERT_TRUE(safe_reach_check(A, shortest_path(A, v, A.o(t.target_face)), cops));
        }
      }
  EXPECT_GT(seen[Tactic::Oscillate], 0);
  EXPECT_GT(seen[Tactic::ThreeFace], 0);
  EXPECT_GT(seen[Tactic::CenterApproach], 0);
  EXPECT_THROW(strategy_at_corner(A, A.o(0), {}), std::invalid_argument);
}

TEST(CornerPlay, StillCopLetsTheRobberReachACentre) {
  Arena& A = arena49();
  const Vertex v = A.v(1);
  auto fv = A.to(v);
  Vertex h = kNoVertex;
  for (Vertex x : A.geo().face_vertices(0))
    if (fv[x] == 2 && A.in_face(x, 1)) h = x;
  ASSERT_NE(h, kNoVertex);
  std::vector<Vertex> cops{h, A.o(11), A.o(9)};
  ASSERT_EQ(strategy_at_corner(A, v, cops).kind, Tactic::Oscillate);
  StaticCops cp(cops);
  ProgramRobber r(A, v, [](View w) { return corner_play(w, "t"); });
  auto tr = run_match(A.graph(), "layered:49", kLazy, cp, r, 200, false);
  EXPECT_EQ(tr.outcome, OutcomeKind::Survived);
  ASSERT_TRUE(r.done);
  EXPECT_EQ(r.outcome.kind, Outcome::Centre);
  EXPECT_LE(r.done_round, 99);
  EXPECT_EQ(r.ctx.guarantee_violations, 0);
}

TEST(CornerPlay, MirroringCopKeepsTheRobberOscillating) {
  Arena& A = arena49();
  const Vertex v = A.v(1);
  auto fv = A.to(v);
  // A cop on the side shared by U and U1, two edges from v1, is 98 from both
  // centres; the third centre is occupied.
  Vertex h = kNoVertex;
  for (Vertex x : A.geo().face_vertices(0))
    if (fv[x] == 2 && A.in_face(x, 1) && A.dist(x, A.o(0)) == 98 && A.dist(x, A.o(1)) == 98) h = x;
  ASSERT_NE(h, kNoVertex);
  std::vector<Vertex> cops{h, A.o(2), A.o(11)};
  ASSERT_EQ(strategy_at_corner(A, v, cops).kind, Tactic::Oscillate);
  ProbeMirrorCop cp(A, cops, v);
  ProgramRobber r(A, v, [](View w) { return corner_play(w, "t"); });
  auto tr = run_match(A.graph(), "layered:49", kLazy, cp, r, 10000, false);
  EXPECT_NE(tr.outcome, OutcomeKind::Captured);
  EXPECT_FALSE(r.done);
  EXPECT_GE(r.ctx.state.oscillations, 4000);
  EXPECT_EQ(r.ctx.guarantee_violations, 0);
}

TEST(CornerPlay, ThreeFaceScenarioThreeReachesTheFreeFace) {
  Arena& A = arena49();
  const Vertex v = A.v(1);
  auto fv = A.to(v);
  auto F = dodeca::faces_of_corner(static_cast<int>(v));
  // One cop only in F[0], one only in F[1], both two edges from v.
  auto only = [&](Vertex x, int f) {
    for (int g : F)
      if (A.in_face(x, g) != (g == f)) return false;
    return true;
  };
  std::vector<Vertex> a, b;
  for (Vertex x = 0; x < A.graph().num_vertices(); ++x) {
    if (fv[x] < 2 || fv[x] > 4) continue;
    if (only(x, F[0])) a.push_back(x);
    if (only(x, F[1])) b.push_back(x);
  }
  std::vector<Vertex> cops;
  for (Vertex x : a)
    for (Vertex y : b)
      if (cops.empty() && strategy_at_corner(A, v, {x, y, A.o(11)}).kind == Tactic::ThreeFace)
        cops = {x, y, A.o(11)};
  ASSERT_FALSE(cops.empty());
  StaticCops cp(cops);
  ProgramRobber r(A, v, [](View w) { return corner_play(w, "t"); });
  run_match(A.graph(), "layered:49", kLazy, cp, r, 200, false);
  ASSERT_TRUE(r.done);
  EXPECT_EQ(r.outcome.kind, Outcome::Centre);
  EXPECT_EQ(r.outcome.face, F[2]);
  EXPECT_LE(r.done_round, 99);
}

// ---------------------------------------------------------------------------
// Lemma 5 route shapes

TEST(CentreEscapeRoutes, DetourLengths) {
  Arena& A = arena49();
  const auto& G = A.geo();
  const int L = 49, S = G.side_length(L);
  // Case (b.1): from the middle m of the side shared with U1, inward to layer
  // r, around two sides of that layer and out to the corner: 199 - r.
  const auto& B1 = A.landmarks().side(1);
  const Vertex m = B1[L + 1];
  const int mpos = G.address_in(m, 1).pos;
  for (int r = 10; r <= 39; ++r) {
    Path in = G.radial_between(1, L, mpos, r);
    const int Sr = G.side_length(r);
    const int ppos = G.address_in(in.back(), 1).pos;
    Path route = concat(concat(concat(in, G.ring_walk(1, r, ppos, 4 * Sr, -1)),
                               G.ring_walk(1, r, 4 * Sr, 3 * Sr, -1)),
                        radial_out(G, 1, r, 3 * S));
    EXPECT_EQ(length(route), 199 - r) << "r=" << r;
  }
  // Case (b.2): from the middle of a layer-r side around to q1: 101 + r.
  for (int r = 4; r <= 49; ++r) {
    const int Sr = G.side_length(r);
    Path route = concat(concat(G.ring_walk(2, r, r + 1, Sr, +1), G.ring_walk(2, r, Sr, 2 * Sr, +1)),
                        radial_out(G, 2, r, 2 * S));
    EXPECT_EQ(length(route), 101 + r) << "r=" << r;
  }
}
