#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lazycops/construct.hpp"
#include "lazycops/engine.hpp"

using namespace lazycops;

namespace {

Graph k2() { return Graph::from_edges(2, {{0, 1}}); }

// Q′ positions in the drawing's 1-based labels.
std::vector<Vertex> at(std::initializer_list<int> labels) {
  std::vector<Vertex> out;
  for (int l : labels) out.push_back(static_cast<Vertex>(l - 1));
  return out;
}

RuleSet lazy(int k, LazySemantics s = LazySemantics::AtMostOne) {
  return {Variant::OneCopMoves, s, k};
}
RuleSet classical(int k) { return {Variant::Classical, LazySemantics::AtMostOne, k}; }

class RandomRobber : public RobberStrategy {
 public:
  explicit RandomRobber(unsigned seed) : rng_(seed) {}
  Vertex place(const GameConfig& c, const RuleSet&) override {
    return std::uniform_int_distribution<Vertex>(0, c.graph->num_vertices() - 1)(rng_);
  }
  Vertex move(const GameConfig& c, const RuleSet&) override {
    auto nb = c.graph->neighbors(c.robber);
    std::uniform_int_distribution<std::size_t> pick(0, nb.size());
    std::size_t i = pick(rng_);
    return i == nb.size() ? c.robber : nb[i];
  }

 private:
  std::mt19937 rng_;
};

class IllegalCops : public CopStrategy {
 public:
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return {0}; }
  Move move(const GameConfig& c, const RuleSet&) override {
    return Move::cops({static_cast<Vertex>(c.graph->num_vertices() - 1)});
  }
};

}  // namespace

TEST(PlaceCops, AcceptsDuplicatesRejectsOutOfRange) {
  auto q = build_subdivided_cube();
  EXPECT_NO_THROW(place_cops(q.graph, classical(2), at({9, 5})));
  EXPECT_NO_THROW(place_cops(q.graph, classical(2), at({3, 3})));
  EXPECT_THROW(place_cops(q.graph, classical(2), {98, 0}), GameError);
  EXPECT_THROW(place_cops(q.graph, classical(2), at({1})), GameError);
  EXPECT_THROW(place_cops(q.graph, classical(0), {}), GameError);
}

TEST(PlaceRobber, StartsRoundOneOrCapturedAtZero) {
  auto q = build_subdivided_cube();
  auto c = place_robber(place_cops(q.graph, classical(2), at({9, 5})), q.vertex(1));
  EXPECT_EQ(c.turn, Side::Robber);
  EXPECT_EQ(c.round, 1);
  EXPECT_FALSE(c.captured);
  auto d = place_robber(place_cops(q.graph, classical(2), at({9, 5})), q.vertex(5));
  EXPECT_TRUE(d.captured);
  EXPECT_EQ(d.capture_round, 0);
  EXPECT_NO_THROW(place_robber(place_cops(q.graph, classical(2), at({9, 5})), q.vertex(20)));
  EXPECT_THROW(place_robber(place_cops(q.graph, classical(2), at({9, 5})), 20), GameError);
}

TEST(LegalMoves, CountsPerVariant) {
  auto g = build_dodecahedron();
  auto base = [&](const RuleSet& r) {
    auto c = place_robber(place_cops(g, r, {0, 10}), 19);
    return apply_move(c, r, Move::robber(19));
  };
  EXPECT_EQ(legal_moves(base(lazy(2)), lazy(2)).size(), 7u);
  auto exact = lazy(2, LazySemantics::ExactlyOne);
  EXPECT_EQ(legal_moves(base(exact), exact).size(), 6u);
  EXPECT_EQ(legal_moves(base(classical(2)), classical(2)).size(), 16u);
  auto rc = place_robber(place_cops(g, lazy(2), {0, 10}), 19);
  EXPECT_EQ(legal_moves(rc, lazy(2)).size(), 4u);
}

TEST(LegalMoves, ClosureProperties) {
  auto g = build_dodecahedron();
  std::mt19937 rng(11);
  for (auto rules : {classical(3), lazy(3), lazy(3, LazySemantics::ExactlyOne)}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_int_distribution<Vertex> pick(0, 19);
      auto c = place_cops(g, rules, {pick(rng), pick(rng), pick(rng)});
      c = place_robber(c, pick(rng));
      if (c.over()) continue;
      c = apply_move(c, rules, Move::robber(c.robber));
      if (c.over()) continue;
      std::set<std::vector<Vertex>> seen;
      for (const auto& m : legal_moves(c, rules)) {
        EXPECT_TRUE(seen.insert(m.to).second);
        int changed = 0;
        for (std::size_t i = 0; i < m.to.size(); ++i) {
          ASSERT_LT(m.to[i], g.num_vertices());
          ASSERT_TRUE(g.adjacent_or_equal(c.cops[i], m.to[i]));
          changed += m.to[i] != c.cops[i];
        }
        if (rules.lazy_cops()) {
          EXPECT_LE(changed, 1);
        }
        if (rules.lazy == LazySemantics::ExactlyOne && rules.lazy_cops()) {
          EXPECT_EQ(changed, 1);
        }
        EXPECT_TRUE(is_legal(c, rules, m));
      }
    }
  }
}

TEST(LegalMoves, RejectsDecidedGame) {
  auto g = k2();
  auto c = place_robber(place_cops(g, classical(1), {0}), 0);
  EXPECT_THROW(legal_moves(c, classical(1)), GameError);
}

TEST(ApplyMove, CaptureAndRounds) {
  auto g = k2();
  auto r = classical(1);
  auto c = place_robber(place_cops(g, r, {0}), 1);
  auto c2 = apply_move(c, r, Move::robber(1));
  EXPECT_EQ(c2.round, 1);
  auto c3 = apply_move(c2, r, Move::cops({0}));
  EXPECT_EQ(c3.round, 2);
  EXPECT_EQ(c3.cops, c.cops);
  EXPECT_EQ(c3.robber, c.robber);
  auto c4 = apply_move(c2, r, Move::cops({1}));
  EXPECT_TRUE(c4.captured);
  EXPECT_EQ(c4.capture_round, 1);
  // Moving onto a cop is legal and loses at once.
  auto c5 = apply_move(c, r, Move::robber(0));
  EXPECT_TRUE(c5.captured);
  EXPECT_EQ(c5.capture_round, 1);
}

TEST(ApplyMove, RejectsIllegal) {
  auto q = build_subdivided_cube();
  auto r = lazy(2);
  auto c = place_robber(place_cops(q.graph, r, at({9, 5})), q.vertex(1));
  EXPECT_THROW(apply_move(c, r, Move::cops(at({9, 5}))), GameError);  // not cops' turn
  EXPECT_THROW(apply_move(c, r, Move::robber(q.vertex(3))), GameError);
  c = apply_move(c, r, Move::robber(q.vertex(1)));
  EXPECT_THROW(apply_move(c, r, Move::cops(at({17, 4}))), GameError);  // both move
  EXPECT_THROW(apply_move(c, r, Move::cops(at({11, 5}))), GameError);  // two-edge jump
  auto exact = lazy(2, LazySemantics::ExactlyOne);
  EXPECT_THROW(apply_move(c, exact, Move::cops(at({9, 5}))), GameError);
  EXPECT_NO_THROW(apply_move(c, r, Move::cops(at({9, 5}))));
}

TEST(ApplyMove, PropositionLineOne) {
  // ⟨9,5;1⟩ → ⟨17,5;1⟩ → ⟨17,5;8⟩ → ⟨1,6;8⟩ in the classical game.
  auto q = build_subdivided_cube();
  auto r = classical(2);
  auto c = place_robber(place_cops(q.graph, r, at({9, 5})), q.vertex(1));
  c = apply_move(c, r, Move::robber(q.vertex(1)));
  c = apply_move(c, r, Move::cops(at({17, 5})));
  c = apply_move(c, r, Move::robber(q.vertex(8)));
  c = apply_move(c, r, Move::cops(at({1, 6})));
  EXPECT_FALSE(c.captured);
  EXPECT_EQ(c.round, 3);
  EXPECT_TRUE(q.graph.has_edge(q.vertex(1), q.vertex(8)));
}

TEST(RunMatch, GreedyCatchesStayingRobberOnK2) {
  auto g = k2();
  GreedyCops cops({0});
  StayRobber robber(1);
  auto t = run_match(g, "k2", classical(1), cops, robber, 10);
  EXPECT_EQ(t.outcome, OutcomeKind::Captured);
  EXPECT_LE(t.outcome_round, 1);
  auto lz = lazy(1, LazySemantics::ExactlyOne);
  GreedyCops lazy_cops({0});
  EXPECT_EQ(run_match(g, "k2", lz, lazy_cops, robber, 10).outcome, OutcomeKind::Captured);
}

TEST(RunMatch, BothStaySurvives) {
  auto g = build_dodecahedron();
  FixedCops cops({0});
  StayRobber robber(19);
  auto t = run_match(g, "dodecahedron", classical(1), cops, robber, 25);
  EXPECT_EQ(t.outcome, OutcomeKind::Survived);
  EXPECT_EQ(t.outcome_round, 25);
  EXPECT_EQ(t.moves.size(), 50u);
  EXPECT_THROW(run_match(g, "d", classical(1), cops, robber, 0), std::invalid_argument);
}

TEST(RunMatch, IllegalMoveIsForfeit) {
  auto g = build_dodecahedron();
  IllegalCops cops;
  StayRobber robber(10);
  auto t = run_match(g, "dodecahedron", classical(1), cops, robber, 5);
  EXPECT_EQ(t.outcome, OutcomeKind::Forfeit);
  EXPECT_EQ(t.forfeit_side, "cops");
  EXPECT_EQ(t.outcome_round, 1);
}

TEST(Transcript, JsonRoundTripAndReplay) {
  auto g = build_dodecahedron();
  for (auto rules : {classical(2), lazy(3), lazy(2, LazySemantics::ExactlyOne)}) {
    std::vector<Vertex> start(rules.k);
    for (int i = 0; i < rules.k; ++i) start[i] = static_cast<Vertex>(i * 5);
    GreedyCops cops(start);
    RandomRobber robber(5);
    auto t = run_match(g, "dodecahedron", rules, cops, robber, 40);
    auto text = to_json(t).dump();
    auto back = transcript_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(to_json(back).dump(), text);
    auto fin = replay(g, back);
    if (t.outcome == OutcomeKind::Captured) {
      EXPECT_TRUE(fin.captured);
      EXPECT_EQ(fin.capture_round, t.outcome_round);
    }
    // Replay of the replay is bit-identical.
    auto again = replay(g, back);
    EXPECT_EQ(again.cops, fin.cops);
    EXPECT_EQ(again.robber, fin.robber);
    EXPECT_EQ(again.round, fin.round);
  }
}

TEST(Transcript, ReplayRejectsTamperedMove) {
  auto g = build_dodecahedron();
  GreedyCops cops({0});
  StayRobber robber(19);
  auto t = run_match(g, "dodecahedron", classical(1), cops, robber, 3);
  ASSERT_GE(t.moves.size(), 2u);
  t.moves[1].to = {19};
  EXPECT_THROW(replay(g, t), GameError);
}

TEST(Transcript, CaptureSoundness) {
  // captured ⟺ some half-turn ended with the robber on a cop.
  auto g = build_dodecahedron();
  for (unsigned seed = 0; seed < 20; ++seed) {
    GreedyCops cops({0, 7});
    RandomRobber robber(seed);
    auto rules = lazy(2);
    auto t = run_match(g, "dodecahedron", rules, cops, robber, 60);
    auto c = place_robber(place_cops(g, rules, t.cop_start), t.robber_start);
    bool hit = c.captured;
    for (const auto& m : t.moves) {
      c = apply_move(c, rules, Move{m.actor, m.to});
      for (Vertex u : c.cops) hit = hit || u == c.robber;
    }
    EXPECT_EQ(hit, t.outcome == OutcomeKind::Captured) << seed;
  }
}
