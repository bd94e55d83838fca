#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lazycops/graph.hpp"

namespace lazycops::dodeca {

// Corner ids: v1..v5 = 0..4 (the corners of U), q1..q5 = 5..9 (far ends of
// B1..B5), s1..s5 = 10..14, b1..b5 = 15..19 (the corners of U11).
inline constexpr int kCorners = 20;
inline constexpr int kFaces = 12;
inline constexpr int kEdges = 30;

constexpr int v(int i) { return (i - 1 + 5) % 5; }
constexpr int q(int i) { return 5 + (i - 1 + 5) % 5; }
constexpr int s(int i) { return 10 + (i - 1 + 5) % 5; }
constexpr int b(int i) { return 15 + (i - 1 + 5) % 5; }

// Face ids: U = 0, U1..U11 = 1..11.
inline constexpr int U = 0;
constexpr int face_U(int i) { return i; }

using Cycle = std::array<int, 5>;

// Every face lists its corners in one rotational sense, so each edge is
// traversed once in each direction over all faces.
inline const std::array<Cycle, kFaces>& faces() {
  static const std::array<Cycle, kFaces> table = [] {
    std::array<Cycle, kFaces> f{};
    f[0] = {v(1), v(2), v(3), v(4), v(5)};
    for (int i = 1; i <= 5; ++i) {
      f[i] = {v(i), v(i - 1), q(i - 1), s(i), q(i)};
      f[5 + i] = {q(i), s(i), b(i), b(i + 1), s(i + 1)};
    }
    f[11] = {b(1), b(5), b(4), b(3), b(2)};
    return f;
  }();
  return table;
}

inline std::string face_name(int f) { return f == 0 ? "U" : "U" + std::to_string(f); }

inline int face_from_name(const std::string& name) {
  for (int f = 0; f < kFaces; ++f)
    if (face_name(f) == name) return f;
  throw std::invalid_argument("unknown face '" + name + "'");
}

inline std::string corner_name(int c) {
  static const char* prefix = "vqsb";
  return std::string(1, prefix[c / 5]) + std::to_string(c % 5 + 1);
}

// Edges as sorted corner pairs, in a fixed order. Edge ids index this list.
inline const std::vector<std::pair<int, int>>& edges() {
  static const std::vector<std::pair<int, int>> list = [] {
    std::vector<std::pair<int, int>> e;
    for (const auto& cyc : faces())
      for (int j = 0; j < 5; ++j) {
        int a = cyc[j], c = cyc[(j + 1) % 5];
        if (a > c) std::swap(a, c);
        e.emplace_back(a, c);
      }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
  }();
  return list;
}

inline int edge_id(int a, int c) {
  if (a > c) std::swap(a, c);
  const auto& e = edges();
  auto it = std::lower_bound(e.begin(), e.end(), std::make_pair(a, c));
  if (it == e.end() || *it != std::make_pair(a, c))
    throw std::invalid_argument("corners " + corner_name(a) + "," + corner_name(c) +
                                " are not adjacent");
  return static_cast<int>(it - e.begin());
}

// Named side paths B1..B15 as corner pairs (first, second).
inline std::pair<int, int> side_B(int i) {
  if (i >= 1 && i <= 5) return {v(i), q(i)};
  if (i >= 6 && i <= 10) return {v(i - 6), v(i - 5)};
  if (i >= 11 && i <= 15) return {s(i - 8), b(i - 8)};
  throw std::out_of_range("side path B" + std::to_string(i) + " does not exist");
}

inline Graph graph() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (auto [a, c] : edges()) e.emplace_back(a, c);
  return Graph::from_edges(kCorners, std::move(e));
}

inline int index_in_face(int f, int corner) {
  const auto& cyc = faces()[f];
  for (int j = 0; j < 5; ++j)
    if (cyc[j] == corner) return j;
  return -1;
}

// Faces incident to a corner, ascending.
inline std::vector<int> faces_of_corner(int corner) {
  std::vector<int> out;
  for (int f = 0; f < kFaces; ++f)
    if (index_in_face(f, corner) >= 0) out.push_back(f);
  return out;
}

// The two faces sharing an edge, ascending.
inline std::pair<int, int> faces_of_edge(int a, int c) {
  std::vector<int> out;
  for (int f = 0; f < kFaces; ++f) {
    int i = index_in_face(f, a), j = index_in_face(f, c);
    if (i >= 0 && j >= 0) out.push_back(f);
  }
  if (out.size() != 2) throw std::logic_error("edge not shared by two faces");
  return {out[0], out[1]};
}

// An automorphism of the dodecahedron together with its action on faces.
// Corner j of face f maps to corner (shift + j) of face image (or shift - j
// when reversed), indices mod 5.
struct Symmetry {
  std::array<std::uint8_t, kCorners> corner{};
  std::array<std::uint8_t, kFaces> face{};
  std::array<std::uint8_t, kFaces> shift{};
  std::array<bool, kFaces> reversed{};

  int map_face_index(int f, int j) const {
    return reversed[f] ? ((shift[f] - j) % 5 + 5) % 5 : (shift[f] + j) % 5;
  }
};

namespace detail {

inline int face_with(int a, int c, int d) {
  for (int f = 0; f < kFaces; ++f)
    if (index_in_face(f, a) >= 0 && index_in_face(f, c) >= 0 && index_in_face(f, d) >= 0)
      return f;
  return -1;
}

inline bool finish(std::array<int, kCorners>& pi, Symmetry& out) {
  // Propagate through faces: three consecutive known corners pin down a face.
  const auto& F = faces();
  bool progress = true;
  while (progress) {
    progress = false;
    // A known corner with two known neighbors fixes the image of the third.
    static const Graph dg = graph();
    for (int x = 0; x < kCorners; ++x) {
      if (pi[x] < 0) continue;
      int unknown = -1, known = 0;
      for (Vertex w : dg.neighbors(x)) (pi[w] < 0 ? unknown = static_cast<int>(w) : ++known);
      if (known != 2 || unknown < 0) continue;
      for (Vertex y : dg.neighbors(pi[x])) {
        bool used = false;
        for (Vertex w : dg.neighbors(x))
          if (pi[w] == static_cast<int>(y)) used = true;
        if (!used) pi[unknown] = static_cast<int>(y);
      }
      progress = true;
    }
    for (int f = 0; f < kFaces; ++f) {
      const auto& cyc = F[f];
      for (int j = 0; j < 5; ++j) {
        int a = cyc[j], c = cyc[(j + 1) % 5], d = cyc[(j + 2) % 5];
        if (pi[a] < 0 || pi[c] < 0 || pi[d] < 0) continue;
        int g = face_with(pi[a], pi[c], pi[d]);
        if (g < 0) return false;
        int ia = index_in_face(g, pi[a]), ic = index_in_face(g, pi[c]);
        int dir = (ic == (ia + 1) % 5) ? 1 : -1;
        for (int t = 0; t < 5; ++t) {
          int src = cyc[(j + t) % 5];
          int dst = F[g][((ia + dir * t) % 5 + 5) % 5];
          if (pi[src] < 0) {
            pi[src] = dst;
            progress = true;
          } else if (pi[src] != dst) {
            return false;
          }
        }
        break;
      }
    }
  }
  for (int x : pi)
    if (x < 0) return false;
  for (auto [a, c] : edges()) {
    int x = pi[a], y = pi[c];
    if (x > y) std::swap(x, y);
    auto& e = edges();
    if (!std::binary_search(e.begin(), e.end(), std::make_pair(x, y))) return false;
  }
  for (int c = 0; c < kCorners; ++c) out.corner[c] = static_cast<std::uint8_t>(pi[c]);
  for (int f = 0; f < kFaces; ++f) {
    const auto& cyc = F[f];
    int g = face_with(pi[cyc[0]], pi[cyc[1]], pi[cyc[2]]);
    int k = index_in_face(g, pi[cyc[0]]);
    out.face[f] = static_cast<std::uint8_t>(g);
    out.shift[f] = static_cast<std::uint8_t>(k);
    out.reversed[f] = F[g][(k + 1) % 5] != pi[cyc[1]];
  }
  return true;
}

}  // namespace detail

// The unique symmetry sending corner j of face f to corner k of face g, with
// the face's rotational sense preserved or reversed.
inline Symmetry symmetry_from_flags(int f, int j, int g, int k, bool reversed) {
  std::array<int, kCorners> pi;
  pi.fill(-1);
  const auto& F = faces();
  int dir = reversed ? -1 : 1;
  for (int t = 0; t < 5; ++t) pi[F[f][(j + t) % 5]] = F[g][((k + dir * t) % 5 + 5) % 5];
  Symmetry s;
  if (!detail::finish(pi, s)) throw std::logic_error("flag map does not extend to a symmetry");
  return s;
}

// All 120 symmetries; index 0 is the identity.
inline const std::vector<Symmetry>& symmetries() {
  static const std::vector<Symmetry> all = [] {
    std::vector<Symmetry> out;
    for (int g = 0; g < kFaces; ++g)
      for (int k = 0; k < 5; ++k)
        for (int r = 0; r < 2; ++r) out.push_back(symmetry_from_flags(0, 0, g, k, r == 1));
    return out;
  }();
  return all;
}

inline int symmetry_index(const Symmetry& s) {
  static const std::map<std::array<std::uint8_t, kCorners>, int> lookup = [] {
    std::map<std::array<std::uint8_t, kCorners>, int> m;
    const auto& all = symmetries();
    for (int i = 0; i < static_cast<int>(all.size()); ++i) m.emplace(all[i].corner, i);
    return m;
  }();
  return lookup.at(s.corner);
}

// (a∘b)(x) = a(b(x)).
inline int compose(int a, int b) {
  static const std::vector<int> table = [] {
    const auto& all = symmetries();
    int n = static_cast<int>(all.size());
    std::vector<int> t(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::array<int, kCorners> pi;
        for (int c = 0; c < kCorners; ++c) pi[c] = all[i].corner[all[j].corner[c]];
        Symmetry s;
        for (int c = 0; c < kCorners; ++c) s.corner[c] = static_cast<std::uint8_t>(pi[c]);
        t[i * n + j] = symmetry_index(s);
      }
    return t;
  }();
  return table[a * static_cast<int>(symmetries().size()) + b];
}

inline int inverse(int a) {
  int n = static_cast<int>(symmetries().size());
  for (int i = 0; i < n; ++i)
    if (compose(a, i) == 0) return i;
  throw std::logic_error("symmetry has no inverse");
}

inline int flag_symmetry(int f, int j, int g, int k, bool reversed) {
  return symmetry_index(symmetry_from_flags(f, j, g, k, reversed));
}

}  // namespace lazycops::dodeca
