#include <gtest/gtest.h>

#include <random>

#include "lazycops/construct.hpp"
#include "lazycops/solver.hpp"
#include "support.hpp"

using namespace lazycops;
using lazycops::testkit::MinimaxOracle;
using lazycops::testkit::position;

namespace {

RuleSet classical(int k) { return {Variant::Classical, LazySemantics::AtMostOne, k}; }
RuleSet lazy(int k, LazySemantics s = LazySemantics::AtMostOne) {
  return {Variant::OneCopMoves, s, k};
}

const Graph& qprime() {
  static const Graph g = build_subdivided_cube().graph;
  return g;
}

}  // namespace

TEST(MultisetCodec, RoundTripsInOrder) {
  for (auto [n, k] : {std::pair{5u, 1}, {6u, 2}, {7u, 3}, {20u, 3}}) {
    MultisetCodec c(n, k);
    EXPECT_EQ(c.size(), MultisetCodec::count(n, k));
    std::vector<Vertex> prev;
    for (std::uint64_t i = 0; i < c.size(); ++i) {
      auto t = c.decode(i);
      ASSERT_TRUE(std::is_sorted(t.begin(), t.end()));
      ASSERT_LT(t.back(), n);
      ASSERT_EQ(c.encode(t), i);
      ASSERT_NE(t, prev);
      prev = t;
    }
  }
  EXPECT_EQ(MultisetCodec::count(20, 3), 1540u);
}

TEST(Solve, TrivialGraphs) {
  EXPECT_TRUE(solve(testkit::path(5), classical(1)).cops_win);
  auto k2 = Graph::from_edges(2, {{0, 1}});
  for (auto r : {classical(1), lazy(1), lazy(1, LazySemantics::ExactlyOne)})
    EXPECT_EQ(cop_number(k2, r, 3).value, 1);
  EXPECT_FALSE(solve(testkit::cycle(4), classical(1)).cops_win);
  EXPECT_TRUE(solve(testkit::cycle(4), classical(2)).cops_win);
}

TEST(Solve, SubdividedCubeNumbers) {
  EXPECT_EQ(cop_number(qprime(), classical(1), 4).value, 2);
  EXPECT_EQ(cop_number(qprime(), lazy(1), 4).value, 3);
  auto exact = cop_number(qprime(), lazy(1, LazySemantics::ExactlyOne), 4);
  ASSERT_TRUE(exact.value.has_value());
  EXPECT_GE(*exact.value, 3);
}

TEST(Solve, BudgetIsEnforced) {
  SolveOptions tiny{1000};
  EXPECT_THROW(solve(qprime(), classical(3), tiny), BudgetExceeded);
  EXPECT_THROW(cop_number(qprime(), classical(1), 0), std::invalid_argument);
}

TEST(Solve, RanksDecreaseAlongCopMoves) {
  PositionTable t(qprime(), lazy(3));
  const Vertex n = qprime().num_vertices();
  for (std::uint64_t tuple = 0; tuple < t.codec().size(); ++tuple)
    for (Vertex r = 0; r < n; ++r) {
      auto p = t.index_sorted(tuple, r, Side::Cops);
      if (!t.cop_win(p) || t.rank(p) == 0) continue;
      bool smaller = false;
      for (auto s : t.cop_successors(tuple))
        smaller = smaller || t.rank(t.index_sorted(s, r, Side::Robber)) < t.rank(p);
      ASSERT_TRUE(smaller);
    }
}

TEST(Solve, MonotoneInK) {
  for (auto base : {classical(1), lazy(1)}) {
    bool won = false;
    for (int k = 1; k <= 3; ++k) {
      base.k = k;
      bool w = solve(qprime(), base).cops_win;
      if (won) {
        EXPECT_TRUE(w);
      }
      won = won || w;
    }
  }
}

TEST(Solve, ExactlyOneWinsAreSubsetOfAtMostOne) {
  for (int k = 1; k <= 3; ++k) {
    PositionTable loose(qprime(), lazy(k)), strict(qprime(), lazy(k, LazySemantics::ExactlyOne));
    for (std::uint64_t p = 0; p < loose.positions(); ++p)
      if (strict.cop_win(p)) {
        ASSERT_TRUE(loose.cop_win(p)) << k;
      }
  }
}

TEST(Solve, MatchesMinimaxOracleOnTinyGraphs) {
  std::mt19937_64 rng(2024);
  std::vector<Graph> graphs{testkit::path(4), testkit::cycle(4), testkit::cycle(5),
                            testkit::cycle(6)};
  for (int i = 0; i < 12; ++i)
    graphs.push_back(testkit::random_connected_graph(4 + i % 3, 0.3, rng));
  for (const auto& g : graphs) {
    const Vertex n = g.num_vertices();
    for (auto rules : {classical(1), classical(2), lazy(2), lazy(2, LazySemantics::ExactlyOne)}) {
      PositionTable t(g, rules);
      MinimaxOracle oracle(g, rules);
      int depth = 2 * static_cast<int>(t.positions());
      std::vector<Vertex> cops(rules.k, 0);
      auto next = [&] {
        for (auto& c : cops) {
          if (++c < n) return true;
          c = 0;
        }
        return false;
      };
      do {
        for (Vertex r = 0; r < n; ++r)
          for (Side s : {Side::Robber, Side::Cops}) {
            int want = oracle.rank(position(g, cops, r, s), depth);
            auto got = t.rank(cops, r, s);
            ASSERT_EQ(want, got == PositionTable::kNoRank ? -1 : static_cast<int>(got))
                << describe(rules) << " n=" << n << " r=" << r;
          }
      } while (next());
    }
  }
}

TEST(ExtractStrategy, CopsCaptureWithinRankOnSubdividedCube) {
  auto t = std::make_shared<PositionTable>(qprime(), lazy(3));
  SolvedCops cops(t);
  SolvedRobber robber(t);
  std::mt19937 rng(99);
  std::uniform_int_distribution<Vertex> pick(0, 19);
  int played = 0;
  while (played < 1000) {
    std::vector<Vertex> c{pick(rng), pick(rng), pick(rng)};
    Vertex r = pick(rng);
    if (!t->cop_win(c, r, Side::Robber) || t->rank(c, r, Side::Robber) == 0) continue;
    auto budget = t->rank(c, r, Side::Robber);
    auto cfg = position(qprime(), c, r, Side::Robber);
    std::uint32_t half = 0;
    while (!cfg.captured && half <= budget) {
      Move m = cfg.turn == Side::Robber ? Move::robber(robber.move(cfg, t->rules()))
                                        : cops.move(cfg, t->rules());
      cfg = apply_move(cfg, t->rules(), m);
      ++half;
    }
    ASSERT_TRUE(cfg.captured);
    ASSERT_LE(half, budget);
    ++played;
  }
}

TEST(ExtractStrategy, MatchUsesOptimalPlacementAndCaptures) {
  auto t = std::make_shared<PositionTable>(qprime(), lazy(3));
  SolvedCops cops(t);
  SolvedRobber robber(t);
  auto tr = run_match(qprime(), "q-prime", t->rules(), cops, robber, 1000);
  EXPECT_EQ(tr.outcome, OutcomeKind::Captured);
  auto placed = resolve_placement(*t);
  EXPECT_LE(static_cast<std::uint32_t>(2 * tr.outcome_round), placed.placement_rank + 1);
}

TEST(ExtractStrategy, K2CopCapturesInOneMove) {
  auto g = Graph::from_edges(2, {{0, 1}});
  auto t = std::make_shared<PositionTable>(g, classical(1));
  SolvedCops cops(t);
  SolvedRobber robber(t);
  auto tr = run_match(g, "k2", classical(1), cops, robber, 10);
  EXPECT_EQ(tr.outcome, OutcomeKind::Captured);
  EXPECT_LE(tr.outcome_round, 1);
}

TEST(ExtractStrategy, StrictCopsRejectLostPositions) {
  auto t = std::make_shared<PositionTable>(qprime(), lazy(2));
  SolvedCops cops(t);
  EXPECT_THROW(cops.place(qprime(), lazy(2)), GameError);
}

TEST(ExtractStrategy, DodecahedronRobberSurvivesTwoCops) {
  auto g = build_dodecahedron();
  auto t = std::make_shared<PositionTable>(g, classical(2));
  SolvedCops cops(t, false);
  SolvedRobber robber(t);
  auto tr = run_match(g, "dodecahedron", classical(2), cops, robber, 100000, false);
  EXPECT_EQ(tr.outcome, OutcomeKind::Survived);
}

TEST(Dismantlable, TreesCyclesAndSolverAgreement) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    auto tree = testkit::random_connected_graph(15, 0.0, rng);
    auto d = dismantle(tree);
    EXPECT_TRUE(d.dismantlable);
    EXPECT_EQ(d.order.size(), 15u);
  }
  EXPECT_FALSE(dismantlable(testkit::cycle(4)));
  EXPECT_TRUE(dismantlable(testkit::cycle(3)));
  for (int i = 0; i < 60; ++i) {
    auto g = testkit::random_connected_graph(6 + i % 20, 0.05 + 0.01 * (i % 10), rng);
    bool one = solve(g, classical(1)).cops_win;
    EXPECT_EQ(dismantlable(g), one) << i;
  }
}

TEST(ScriptedLines, AllFiveLinesAreLegal) {
  auto reports = verify_scripted_lines(qprime(), subdivided_cube_lines());
  ASSERT_EQ(reports.size(), 5u);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_TRUE(reports[i].legal) << i << ": " << reports[i].reason;
    EXPECT_TRUE(reports[i].forced_capture) << i;
    // Line 3 leaves out the robber standing still at 2.
    EXPECT_EQ(reports[i].implicit_stays, i == 2 ? 1 : 0) << i;
  }
}

TEST(ScriptedLines, JumpIsRejectedAtItsIndex) {
  auto r = verify_scripted_lines(qprime(), {"<9,5;1> -> <17,5;1> -> <17,5;8> -> <7,6;8>"});
  EXPECT_FALSE(r[0].legal);
  EXPECT_EQ(r[0].bad_index, 3);
  auto moved_both = verify_scripted_lines(qprime(), {"<9,5;3> -> <9,4;2>"});
  EXPECT_FALSE(moved_both[0].legal);
  EXPECT_EQ(moved_both[0].bad_index, 1);
  EXPECT_THROW(parse_scripted_line("<9,5 1>"), std::invalid_argument);
}

TEST(SolveResult, Json) {
  auto r = solve(qprime(), classical(2));
  auto j = to_json(r, "q-prime");
  EXPECT_EQ(j["winner"], "cops");
  EXPECT_EQ(j["k"], 2);
  EXPECT_TRUE(j.contains("ranks"));
}
