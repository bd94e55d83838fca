#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "lazycops/construct.hpp"
#include "lazycops/validate.hpp"

using namespace lazycops;

namespace {

// Girth via BFS from every vertex: the shortest cycle through the root closes
// where two BFS branches meet.
Hops girth(const Graph& g) {
  Hops best = kUnreachable;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    std::vector<Hops> dist(g.num_vertices(), kUnreachable);
    std::vector<Vertex> parent(g.num_vertices(), kNoVertex), queue{s};
    dist[s] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Vertex u = queue[h];
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

const LayeredDodecahedron& d49() {
  static const LayeredDodecahedron d(49);
  return d;
}

}  // namespace

TEST(SubdividedCube, Shape) {
  auto q = build_subdivided_cube();
  EXPECT_EQ(q.graph.num_vertices(), 20u);
  EXPECT_EQ(q.graph.num_edges(), 24u);
  auto nb17 = q.graph.neighbors(q.vertex(17));
  std::set<int> labels;
  for (Vertex w : nb17) labels.insert(q.label[w]);
  EXPECT_EQ(labels, (std::set<int>{1, 9}));
  EXPECT_EQ(q.graph.degree(q.vertex(2)), 2u);
  EXPECT_EQ(q.graph.degree(q.vertex(1)), 3u);
  EXPECT_TRUE(q.graph.has_edge(q.vertex(3), q.vertex(18)));
  EXPECT_TRUE(q.graph.has_edge(q.vertex(9), q.vertex(17)));
  EXPECT_TRUE(q.graph.has_edge(q.vertex(16), q.vertex(9)));
}

TEST(Dodecahedron, Shape) {
  auto g = build_dodecahedron();
  EXPECT_EQ(g.num_vertices(), 20u);
  EXPECT_EQ(g.num_edges(), 30u);
  for (Vertex v = 0; v < 20; ++v) EXPECT_EQ(g.degree(v), 3u);
  EXPECT_EQ(girth(g), 5u);
}

TEST(Dodecahedron, FacesAreConsistentlyOriented) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& cyc : dodeca::faces())
    for (int j = 0; j < 5; ++j) ++directed[{cyc[j], cyc[(j + 1) % 5]}];
  EXPECT_EQ(directed.size(), 60u);
  for (auto [e, count] : directed) {
    EXPECT_EQ(count, 1);
    EXPECT_EQ(directed.count({e.second, e.first}), 1u);
  }
}

TEST(Dodecahedron, SymmetryGroup) {
  const auto& all = dodeca::symmetries();
  ASSERT_EQ(all.size(), 120u);
  std::set<std::array<std::uint8_t, 20>> distinct;
  for (const auto& s : all) distinct.insert(s.corner);
  EXPECT_EQ(distinct.size(), 120u);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(all[0].corner[i], i);
  for (int a = 0; a < 120; a += 7) EXPECT_EQ(dodeca::compose(a, dodeca::inverse(a)), 0);
}

TEST(Dodecahedron, NamedSides) {
  // B6..B10 are the sides of U; B1..B5 lead to U6..U10; B11..B15 touch U11.
  for (int i = 6; i <= 10; ++i) {
    auto [a, b] = dodeca::side_B(i);
    auto [f, g] = dodeca::faces_of_edge(a, b);
    EXPECT_EQ(f, 0);
    EXPECT_EQ(g, i - 5);
  }
  for (int i = 1; i <= 5; ++i) {
    auto [a, b] = dodeca::side_B(i);
    EXPECT_EQ(dodeca::index_in_face(5 + i, b), 0);
    EXPECT_EQ(dodeca::index_in_face(0, a), i - 1);
  }
  int touches[] = {3, 4, 5, 1, 2};
  for (int i = 11; i <= 15; ++i) {
    auto [a, b] = dodeca::side_B(i);
    EXPECT_GE(dodeca::index_in_face(touches[i - 11], a), 0);
    EXPECT_GE(dodeca::index_in_face(11, b), 0);
  }
}

TEST(Layered, RejectsZeroLayers) { EXPECT_THROW(LayeredDodecahedron(0), std::invalid_argument); }

TEST(Layered, CountsMatchClosedForms) {
  for (int L : {1, 2, 3, 5, 10}) {
    LayeredDodecahedron d(L);
    EXPECT_EQ(d.graph().num_vertices(), LayeredDodecahedron::expected_vertices(L)) << L;
    EXPECT_EQ(d.graph().num_edges(), LayeredDodecahedron::expected_edges(L)) << L;
  }
  EXPECT_EQ(LayeredDodecahedron::expected_vertices(3), 1922u);
}

TEST(Layered, CountsAtPaperDepth) {
  const auto& d = d49();
  EXPECT_EQ(d.graph().num_vertices(), 302762u);
  EXPECT_EQ(d.graph().num_edges(), 455640u);
}

TEST(Layered, AddressesRoundTrip) {
  LayeredDodecahedron d(4);
  std::size_t multi2 = 0, multi3 = 0;
  for (Vertex v = 0; v < d.num_vertices(); ++v) {
    auto as = d.addresses(v);
    for (const auto& a : as) ASSERT_EQ(d.at(a), v);
    if (as.size() == 2) ++multi2;
    if (as.size() == 3) ++multi3;
  }
  EXPECT_EQ(multi3, 20u);
  EXPECT_EQ(multi2, 30u * 9);
}

TEST(Layered, SymmetriesAreAutomorphisms) {
  LayeredDodecahedron d(3);
  const auto& g = d.graph();
  for (int s = 0; s < 120; ++s) {
    std::vector<char> hit(g.num_vertices(), 0);
    for (Vertex v = 0; v < g.num_vertices(); ++v) hit[d.map_vertex(s, v)] = 1;
    ASSERT_EQ(std::count(hit.begin(), hit.end(), 1), static_cast<long>(g.num_vertices()));
    for (auto [u, v] : g.edges()) ASSERT_TRUE(g.has_edge(d.map_vertex(s, u), d.map_vertex(s, v)));
  }
}

TEST(Landmarks, PaperDistances) {
  const auto& d = d49();
  LandmarkTable t(d);
  const auto& g = d.graph();
  auto from_o = bfs(g, landmark(t, "o@U"));
  EXPECT_EQ(from_o[landmark(t, "v1@U")], 98u);
  EXPECT_EQ(from_o[landmark(t, "m2@U")], 98u);
  EXPECT_EQ(from_o[landmark(t, "o2")], 196u);
  EXPECT_EQ(from_o[landmark(t, "q1")], 198u);
  EXPECT_EQ(distance(g, landmark(t, "v1@U"), landmark(t, "m@B1")), 50u);
  EXPECT_EQ(distance_to_set(g, landmark(t, "o"), t.side(7)), 98u);
  EXPECT_EQ(distance(g, landmark(t, "p"), landmark(t, "m4@U")), 1u);
  EXPECT_EQ(distance(g, landmark(t, "p"), landmark(t, "v3")), 49u);
  EXPECT_EQ(distance(g, landmark(t, "q"), landmark(t, "v4")), 49u);
  EXPECT_THROW(landmark(t, "nowhere"), std::invalid_argument);
}

TEST(Landmarks, SidesAndCorners) {
  LayeredDodecahedron d(4);
  LandmarkTable t(d);
  EXPECT_EQ(t.side(7).front(), landmark(t, "v1"));
  EXPECT_EQ(t.side(7).back(), landmark(t, "v2"));
  EXPECT_EQ(t.side(1).back(), landmark(t, "q1"));
  EXPECT_EQ(landmark(t, "m1@U"), t.side(6)[5]);
  EXPECT_EQ(landmark(t, "m2@U"), t.side(7)[5]);
  EXPECT_EQ(landmark(t, "o"), landmark(t, "o@U"));
  std::stringstream ss;
  write_landmarks(ss, t);
  EXPECT_NE(ss.str().find("o@U "), std::string::npos);
}

TEST(Layered, SpokesHaveLength2L) {
  LayeredDodecahedron d(7);
  for (int f = 0; f < 12; ++f)
    for (Vertex y : d.layer(f, 7)) {
      auto p = d.spoke(f, y);
      ASSERT_EQ(p.size(), 15u);
      for (std::size_t k = 0; k + 1 < p.size(); ++k) ASSERT_TRUE(d.graph().has_edge(p[k], p[k + 1]));
    }
}

TEST(FaceDistanceFormula, Examples) {
  const auto& d = d49();
  LandmarkTable t(d);
  EXPECT_EQ(d.face_distance_formula(0, landmark(t, "v1"), landmark(t, "v1")), 0);
  EXPECT_EQ(d.face_distance_formula(0, landmark(t, "v1"), landmark(t, "m2@U")), 50);
  Vertex y = d.ring(0, 5, 1, 6), x = d.ring(0, 2, 1, 3);
  EXPECT_EQ(d.face_distance_formula(0, x, y), 6);
  EXPECT_EQ(distance(d.graph(), x, y), 6u);
  EXPECT_THROW(d.face_distance_formula(0, d.center(0), y), std::invalid_argument);
}

TEST(FaceDistanceFormula, ExhaustiveSmallDepths) {
  for (int L = 2; L <= 5; ++L) {
    LayeredDodecahedron d(L);
    for (int f = 0; f < 12; ++f) {
      std::vector<Vertex> ring;
      for (int n = 1; n <= L; ++n)
        for (Vertex v : d.layer(f, n)) ring.push_back(v);
      for (Vertex x : ring) {
        auto fx = bfs(d.graph(), x);
        for (Vertex y : ring) ASSERT_EQ(d.face_distance_formula(f, x, y), long(fx[y])) << L;
      }
    }
  }
}


TEST(Validate, SmallDepthPassesExhaustively) {
  for (int L : {1, 2, 3, 4}) {
    LayeredDodecahedron d(L);
    auto r = validate_construction(d);
    EXPECT_TRUE(r.passed()) << format_report(r);
    EXPECT_TRUE(r.lemma1_exhaustive);
  }
}

TEST(Validate, MissingConnectorEdgeFailsCensus) {
  LayeredDodecahedron d(3);
  auto edges = d.graph().edges();
  Vertex c = d.layer_connector(4, 1, 7);
  auto it = std::find_if(edges.begin(), edges.end(),
                         [&](auto e) { return e.first == c || e.second == c; });
  ASSERT_NE(it, edges.end());
  edges.erase(it);
  auto mutated = Graph::from_edges(d.num_vertices(), edges);
  auto r = validate_construction(mutated, d);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.check("connector-census").pass);
}

TEST(Validate, PaperDepth) {
  auto r = validate_construction(d49());
  EXPECT_TRUE(r.passed()) << format_report(r);
  EXPECT_FALSE(r.lemma1_exhaustive);
  EXPECT_GE(r.lemma1_pairs, 10000u);
}
