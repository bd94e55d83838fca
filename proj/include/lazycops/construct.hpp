#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lazycops/dodecahedron.hpp"
#include "lazycops/graph.hpp"

namespace lazycops {

// Q′: the cube with every edge subdivided once. Vertex id = label − 1.
struct LabeledGraph {
  Graph graph;
  std::vector<int> label;  // label[v], 1-based as in the drawing

  Vertex vertex(int lab) const {
    for (Vertex v = 0; v < label.size(); ++v)
      if (label[v] == lab) return v;
    throw std::out_of_range("no vertex labelled " + std::to_string(lab));
  }
};

inline LabeledGraph build_subdivided_cube() {
  std::vector<std::pair<Vertex, Vertex>> e;
  auto add = [&](int a, int b) { e.emplace_back(a - 1, b - 1); };
  for (int i = 1; i <= 8; ++i) add(i, i % 8 + 1);
  for (int i = 9; i <= 16; ++i) add(i, i == 16 ? 9 : i + 1);
  add(17, 1), add(17, 9);
  add(18, 3), add(18, 11);
  add(19, 5), add(19, 13);
  add(20, 7), add(20, 15);
  LabeledGraph out{Graph::from_edges(20, std::move(e)), {}};
  for (int i = 1; i <= 20; ++i) out.label.push_back(i);
  return out;
}

inline Graph build_dodecahedron() { return dodeca::graph(); }

enum class Role : std::uint8_t { Center, Ring, CenterConnector, LayerConnector };

inline const char* role_name(Role r) {
  switch (r) {
    case Role::Center: return "center";
    case Role::Ring: return "ring";
    case Role::CenterConnector: return "center-connector";
    case Role::LayerConnector: return "layer-connector";
  }
  return "?";
}

// Position of a vertex inside one face. For ring vertices `pos` indexes the
// ring of layer `layer` (side = pos / (2n+2), offset = pos % (2n+2)). A
// connector is identified by the ring vertex it joins on its outer end:
// center connectors by a layer-1 position (layer = 0), layer connectors
// between n and n+1 by a layer-(n+1) position (layer = n).
struct FaceAddress {
  std::int8_t face = -1;
  Role role = Role::Center;
  std::uint8_t layer = 0;
  std::uint16_t pos = 0;

  int ring_layer() const {
    switch (role) {
      case Role::Ring: return layer;
      case Role::CenterConnector: return 1;
      case Role::LayerConnector: return layer + 1;
      default: return 0;
    }
  }
  int side() const { return role == Role::Center ? 0 : pos / (2 * ring_layer() + 2); }
  int offset() const { return role == Role::Center ? 0 : pos % (2 * ring_layer() + 2); }
  bool operator==(const FaceAddress&) const = default;
};

class LayeredDodecahedron {
 public:
  explicit LayeredDodecahedron(int L) : L_(L) {
    if (L < 1) throw std::invalid_argument("layer count must be at least 1");
    if (L > 200) throw std::invalid_argument("layer count too large");
    edge_base_ = dodeca::kCorners;
    face_base_ = edge_base_ + dodeca::kEdges * (2 * L + 1);
    per_face_ = 10 * L * L + 20 * L - 9;
    ring_start_.assign(L + 1, 0);
    for (int n = 1; n < L; ++n) ring_start_[n] = 21 + 10 * n * (n - 1) + 30 * (n - 1);
    build();
  }

  int layers() const { return L_; }
  const Graph& graph() const { return graph_; }
  std::size_t num_vertices() const { return graph_.num_vertices(); }

  static std::size_t expected_vertices(long long L) { return 120 * L * L + 300 * L - 58; }
  static std::size_t expected_edges(long long L) {
    long long per_face = 40;
    for (long long n = 1; n <= L - 1; ++n) per_face += (10 * n + 10) + 2 * (10 * n + 20);
    return static_cast<std::size_t>(12 * per_face + 30 * (2 * L + 2));
  }

  int ring_length(int n) const { return 10 * n + 10; }
  int side_length(int n) const { return 2 * n + 2; }

  Vertex center(int f) const { return face_base_ + f * per_face_; }
  Vertex corner(int c) const { return static_cast<Vertex>(c); }

  Vertex ring(int f, int n, int pos) const {
    int R = ring_length(n);
    pos = ((pos % R) + R) % R;
    if (n < L_) return face_base_ + f * per_face_ + ring_start_[n] + pos;
    int S = side_length(n);
    int j = pos / S, t = pos % S;
    const auto& cyc = dodeca::faces()[f];
    int a = cyc[j], b = cyc[(j + 1) % 5];
    if (t == 0) return corner(a);
    int e = dodeca::edge_id(a, b);
    int idx = a < b ? t - 1 : S - t - 1;
    return edge_base_ + e * (2 * L_ + 1) + idx;
  }
  Vertex ring(int f, int n, int side, int offset) const {
    return ring(f, n, side * side_length(n) + offset);
  }
  Vertex center_connector(int f, int pos) const {
    return face_base_ + f * per_face_ + 1 + ((pos % 20) + 20) % 20;
  }
  Vertex layer_connector(int f, int n, int upper_pos) const {
    int R = ring_length(n + 1);
    upper_pos = ((upper_pos % R) + R) % R;
    return face_base_ + f * per_face_ + ring_start_[n] + ring_length(n) + upper_pos;
  }

  // Lower end of the inward connector leaving layer n+1 at `upper_pos`.
  int lower_pos(int n, int upper_pos) const {
    int S = side_length(n + 1);
    int j = upper_pos / S, t = upper_pos % S;
    int s = side_length(n);
    if (t <= 1) return j * s;
    if (t == S - 1) return ((j + 1) % 5) * s;
    return j * s + t - 1;
  }

  // Addresses of a vertex: one for face-interior vertices, two for outer
  // non-corner vertices, three for dodecahedron corners. Ascending by face.
  std::vector<FaceAddress> addresses(Vertex v) const {
    graph_.check(v);
    std::vector<FaceAddress> out;
    int S = side_length(L_);
    if (v < edge_base_) {
      for (int f : dodeca::faces_of_corner(v))
        out.push_back(ring_addr(f, L_, dodeca::index_in_face(f, v) * S));
      return out;
    }
    if (v < face_base_) {
      int e = (v - edge_base_) / (2 * L_ + 1);
      int idx = (v - edge_base_) % (2 * L_ + 1);
      auto [a, b] = dodeca::edges()[e];
      auto [f1, f2] = dodeca::faces_of_edge(a, b);
      for (int f : {f1, f2}) {
        int ia = dodeca::index_in_face(f, a), ib = dodeca::index_in_face(f, b);
        int pos = (ib == (ia + 1) % 5) ? ia * S + idx + 1 : ib * S + (S - idx - 1);
        out.push_back(ring_addr(f, L_, pos));
      }
      return out;
    }
    out.push_back(interior_[v - face_base_]);
    return out;
  }

  FaceAddress address(Vertex v) const { return addresses(v).front(); }

  FaceAddress address_in(Vertex v, int f) const {
    for (const auto& a : addresses(v))
      if (a.face == f) return a;
    throw std::invalid_argument("vertex " + std::to_string(v) + " not in face " +
                                dodeca::face_name(f));
  }

  bool in_face(Vertex v, int f) const {
    if (v >= face_base_) return (v - face_base_) / per_face_ == static_cast<Vertex>(f);
    for (const auto& a : addresses(v))
      if (a.face == f) return true;
    return false;
  }

  std::vector<int> faces_of(Vertex v) const {
    std::vector<int> out;
    for (const auto& a : addresses(v)) out.push_back(a.face);
    return out;
  }

  bool is_outer(Vertex v) const { return v < face_base_; }

  Vertex at(const FaceAddress& a) const {
    switch (a.role) {
      case Role::Center: return center(a.face);
      case Role::Ring: return ring(a.face, a.layer, a.pos);
      case Role::CenterConnector: return center_connector(a.face, a.pos);
      case Role::LayerConnector: return layer_connector(a.face, a.layer, a.pos);
    }
    throw std::logic_error("bad role");
  }

  // Ring vertex one layer further in along the connector scheme (the center
  // for layer 1).
  Vertex inward(int f, int n, int pos) const {
    if (n == 1) return center(f);
    return ring(f, n - 1, lower_pos(n - 1, pos));
  }

  // Projection of ring position `pos` on layer s to layer r ≤ s.
  int project(int s, int pos, int r) const {
    for (int n = s; n > r; --n) pos = lower_pos(n - 1, pos);
    return pos;
  }

  // Radial path from a ring vertex (layer n, position pos) to the center.
  std::vector<Vertex> radial_in(int f, int n, int pos) const {
    std::vector<Vertex> path{ring(f, n, pos)};
    for (int m = n; m > 1; --m) {
      path.push_back(layer_connector(f, m - 1, pos));
      pos = lower_pos(m - 1, pos);
      path.push_back(ring(f, m - 1, pos));
    }
    path.push_back(center_connector(f, pos));
    path.push_back(center(f));
    return path;
  }

  // Spoke: path from the center of f out to an outer-layer vertex y.
  std::vector<Vertex> spoke(int f, Vertex y) const {
    auto a = address_in(y, f);
    if (a.role != Role::Ring || a.layer != L_)
      throw std::invalid_argument("spoke target must be on the outer layer");
    auto p = radial_in(f, L_, a.pos);
    std::reverse(p.begin(), p.end());
    return p;
  }

  // Radial path between two ring vertices of f on the same radial line, from
  // (n_from, pos_from) to layer n_to. Works both inward and outward; outward
  // requires pos_to on layer n_to whose projection is pos_from.
  std::vector<Vertex> radial_between(int f, int n_out, int pos_out, int n_in) const {
    std::vector<Vertex> path{ring(f, n_out, pos_out)};
    int pos = pos_out;
    for (int m = n_out; m > n_in; --m) {
      path.push_back(layer_connector(f, m - 1, pos));
      pos = lower_pos(m - 1, pos);
      path.push_back(ring(f, m - 1, pos));
    }
    return path;
  }

  // Walk along ring n from pos a to pos b in direction dir (+1 or -1).
  std::vector<Vertex> ring_walk(int f, int n, int a, int b, int dir) const {
    int R = ring_length(n);
    std::vector<Vertex> path{ring(f, n, a)};
    int p = ((a % R) + R) % R;
    int target = ((b % R) + R) % R;
    while (p != target) {
      p = ((p + dir) % R + R) % R;
      path.push_back(ring(f, n, p));
    }
    return path;
  }

  int ring_distance(int n, int a, int b) const {
    int R = ring_length(n);
    int d = std::abs(a - b) % R;
    return std::min(d, R - d);
  }

  // Vertices of layer n of face f in ring order.
  std::vector<Vertex> layer(int f, int n) const {
    std::vector<Vertex> out;
    for (int p = 0; p < ring_length(n); ++p) out.push_back(ring(f, n, p));
    return out;
  }

  std::vector<Vertex> face_vertices(int f) const {
    std::vector<Vertex> out;
    for (int i = 0; i < per_face_; ++i) out.push_back(face_base_ + f * per_face_ + i);
    for (Vertex v : layer(f, L_)) out.push_back(v);
    return out;
  }

  // Outer path between two adjacent dodecahedron corners, inclusive.
  std::vector<Vertex> edge_path(int a, int b) const {
    auto [f, g] = dodeca::faces_of_edge(a, b);
    (void)g;
    int ia = dodeca::index_in_face(f, a), ib = dodeca::index_in_face(f, b);
    int S = side_length(L_);
    int dir = (ib == (ia + 1) % 5) ? 1 : -1;
    return ring_walk(f, L_, ia * S, ib * S, dir);
  }

  // Lemma-1 style distance for two ring vertices of one face.
  long face_distance_formula(int f, Vertex x, Vertex y) const {
    auto ax = address_in(x, f), ay = address_in(y, f);
    if (ax.role != Role::Ring || ay.role != Role::Ring)
      throw std::invalid_argument("face_distance_formula needs ring vertices");
    if (ax.layer > ay.layer) std::swap(ax, ay);
    int r = ax.layer, s = ay.layer;
    int w = project(s, ay.pos, r);
    return std::min<long>(2 * r + 2 * s, 2 * (s - r) + ring_distance(r, w, ax.pos));
  }

  // Image of v under dodecahedron symmetry `sym` (index into dodeca::symmetries()).
  Vertex map_vertex(int sym, Vertex v) const {
    const auto& S = dodeca::symmetries()[sym];
    if (v < edge_base_) return S.corner[v];
    FaceAddress a = v < face_base_ ? address(v) : interior_[v - face_base_];
    int g = S.face[a.face];
    FaceAddress b = a;
    b.face = static_cast<std::int8_t>(g);
    if (a.role != Role::Center) {
      int n = a.ring_layer();
      int R = ring_length(n), side = side_length(n);
      int base = S.shift[a.face] * side;
      int p = S.reversed[a.face] ? base - a.pos : base + a.pos;
      b.pos = static_cast<std::uint16_t>(((p % R) + R) % R);
    }
    return at(b);
  }

 private:
  FaceAddress ring_addr(int f, int n, int pos) const {
    FaceAddress a;
    a.face = static_cast<std::int8_t>(f);
    a.role = Role::Ring;
    a.layer = static_cast<std::uint8_t>(n);
    a.pos = static_cast<std::uint16_t>(pos);
    return a;
  }

  void build() {
    std::size_t n_total = face_base_ + 12 * per_face_;
    interior_.assign(12 * per_face_, FaceAddress{});
    auto set = [&](Vertex v, int f, Role r, int layer, int pos) {
      auto& a = interior_[v - face_base_];
      a.face = static_cast<std::int8_t>(f);
      a.role = r;
      a.layer = static_cast<std::uint8_t>(layer);
      a.pos = static_cast<std::uint16_t>(pos);
    };
    std::vector<std::pair<Vertex, Vertex>> e;
    e.reserve(expected_edges(L_));
    for (auto [a, b] : dodeca::edges()) {
      int eid = dodeca::edge_id(a, b);
      Vertex prev = a;
      for (int i = 0; i < 2 * L_ + 1; ++i) {
        Vertex x = edge_base_ + eid * (2 * L_ + 1) + i;
        e.emplace_back(prev, x);
        prev = x;
      }
      e.emplace_back(prev, b);
    }
    for (int f = 0; f < 12; ++f) {
      Vertex o = center(f);
      set(o, f, Role::Center, 0, 0);
      for (int p = 0; p < 20; ++p) {
        Vertex c = center_connector(f, p);
        set(c, f, Role::CenterConnector, 0, p);
        e.emplace_back(o, c);
        e.emplace_back(c, ring(f, 1, p));
      }
      for (int n = 1; n < L_; ++n) {
        int R = ring_length(n);
        for (int p = 0; p < R; ++p) {
          set(ring(f, n, p), f, Role::Ring, n, p);
          e.emplace_back(ring(f, n, p), ring(f, n, p + 1));
        }
        for (int p = 0; p < ring_length(n + 1); ++p) {
          Vertex c = layer_connector(f, n, p);
          set(c, f, Role::LayerConnector, n, p);
          e.emplace_back(c, ring(f, n + 1, p));
          e.emplace_back(c, ring(f, n, lower_pos(n, p)));
        }
      }
    }
    graph_ = Graph::from_edges(n_total, std::move(e));
  }

  int L_;
  Vertex edge_base_ = 0, face_base_ = 0;
  int per_face_ = 0;
  std::vector<int> ring_start_;
  std::vector<FaceAddress> interior_;
  Graph graph_;
};

// Named landmarks of a layered dodecahedron. Per face F: "o@F", "v1@F".."v5@F"
// (corners in face order), "m1@F".."m5@F" (m_i is the middle of the side from
// v_{i-1} to v_i). Globals: corner names "v1".."b5", "o", "o1".."o11",
// "m@B1".."m@B15" (alias "m" for m@B1), "p", "q". Side paths "B1".."B15".
class LandmarkTable {
 public:
  explicit LandmarkTable(const LayeredDodecahedron& d) : d_(&d) {
    int L = d.layers();
    int S = d.side_length(L);
    for (int f = 0; f < 12; ++f) {
      std::string F = dodeca::face_name(f);
      add("o@" + F, d.center(f));
      for (int i = 1; i <= 5; ++i) {
        add("v" + std::to_string(i) + "@" + F, d.ring(f, L, (i - 1) * S));
        int side = (i + 3) % 5;
        add("m" + std::to_string(i) + "@" + F, d.ring(f, L, side * S + L + 1));
      }
      if (f > 0) add("o" + std::to_string(f), d.center(f));
    }
    add("o", d.center(0));
    for (int c = 0; c < 20; ++c) add(dodeca::corner_name(c), d.corner(c));
    for (int i = 1; i <= 15; ++i) {
      auto [a, b] = dodeca::side_B(i);
      sides_[i] = d.edge_path(a, b);
      add("m@B" + std::to_string(i), sides_[i][L + 1]);
    }
    add("m", vertex("m@B1"));
    // p: on B9 one edge from m4 toward v3; q: on B10 one edge from m5 toward v4.
    add("p", d.ring(0, L, 2 * S + L));
    add("q", d.ring(0, L, 3 * S + L));
  }

  Vertex vertex(const std::string& name) const {
    auto it = names_.find(name);
    if (it == names_.end()) throw std::invalid_argument("unknown landmark '" + name + "'");
    return it->second;
  }

  const std::vector<Vertex>& side(int i) const {
    auto it = sides_.find(i);
    if (it == sides_.end()) throw std::out_of_range("no side path B" + std::to_string(i));
    return it->second;
  }

  const std::map<std::string, Vertex>& all() const { return names_; }
  const LayeredDodecahedron& geometry() const { return *d_; }

 private:
  void add(const std::string& name, Vertex v) { names_[name] = v; }

  const LayeredDodecahedron* d_;
  std::map<std::string, Vertex> names_;
  std::map<int, std::vector<Vertex>> sides_;
};

inline Vertex landmark(const LandmarkTable& t, const std::string& name) { return t.vertex(name); }

inline void write_landmarks(std::ostream& out, const LandmarkTable& t) {
  for (const auto& [name, v] : t.all()) out << name << ' ' << v << '\n';
}

inline void write_face_addresses(std::ostream& out, const LayeredDodecahedron& d) {
  for (Vertex v = 0; v < d.num_vertices(); ++v)
    for (const auto& a : d.addresses(v))
      out << v << ' ' << dodeca::face_name(a.face) << ' ' << role_name(a.role) << ' '
          << int(a.layer) << ' ' << a.side() << ' ' << a.offset() << '\n';
}

}  // namespace lazycops
