#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "lazycops/construct.hpp"
#include "lazycops/oracle.hpp"

namespace lazycops {

// The layered dodecahedron the robber strategy plays on, with everything the
// strategy measures distances against: a symmetry-aware oracle for single
// targets and precomputed fields for faces and named side paths.
class Arena {
 public:
  static constexpr int kLayers = 49;

  explicit Arena(int L = kLayers, std::size_t cache = 384)
      : d_(std::make_unique<LayeredDodecahedron>(L)),
        lm_(std::make_unique<LandmarkTable>(*d_)),
        sym_(std::make_unique<SymmetryTables>(*d_)),
        oracle_(*sym_, cache) {
    for (int f = 0; f < dodeca::kFaces; ++f) face_[f] = oracle_.to_set(d_->face_vertices(f));
    for (int i = 1; i <= 15; ++i) side_[i] = oracle_.to_set(lm_->side(i));
    for (int s = 0; s < sym_->count(); ++s)
      if (dodeca::symmetries()[s].face[0] == 0) stab_.push_back(s);
    S_ = d_->side_length(L);
  }

  const LayeredDodecahedron& geo() const { return *d_; }
  const Graph& graph() const { return d_->graph(); }
  const LandmarkTable& landmarks() const { return *lm_; }
  const SymmetryTables& sym() const { return *sym_; }
  DistanceOracle& oracle() { return oracle_; }
  int layers() const { return d_->layers(); }

  int dist(Vertex a, Vertex b) { return oracle_.distance(a, b); }
  FieldView to(Vertex v) { return oracle_.to(v); }
  int to_face(Vertex x, int f) const { return face_[f][x]; }
  int to_faces(Vertex x, std::initializer_list<int> fs) const {
    int best = 1 << 20;
    for (int f : fs) best = std::min(best, face_[f][x]);
    return best;
  }
  int to_side(Vertex x, int i) const { return side_[i][x]; }
  bool in_face(Vertex x, int f) const { return face_[f][x] == 0; }
  bool on_side(Vertex x, int i) const { return side_[i][x] == 0; }

  // Corners by dodeca id and by letter/index.
  Vertex corner(int c) const { return d_->corner(c); }
  Vertex v(int i) const { return corner(dodeca::v(i)); }
  Vertex q(int i) const { return corner(dodeca::q(i)); }
  Vertex s(int i) const { return corner(dodeca::s(i)); }
  Vertex b(int i) const { return corner(dodeca::b(i)); }
  Vertex o(int f = 0) const { return d_->center(f); }
  // m_i of U: the middle of side v_{i-1} v_i.
  Vertex m(int i) const { return lm_->vertex("m" + std::to_string(i) + "@U"); }
  Vertex named(const std::string& n) const { return lm_->vertex(n); }

  // Symmetries fixing face U.
  const std::vector<int>& stabilizer() const { return stab_; }
  // The symmetry fixing U that sends corner v_a to v_b and v_c to v_d.
  int fixing_u(int a, int b, int c, int d) const {
    for (int s : stab_) {
      const auto& S = dodeca::symmetries()[s];
      if (S.corner[dodeca::v(a)] == dodeca::v(b) && S.corner[dodeca::v(c)] == dodeca::v(d))
        return s;
    }
    throw std::logic_error("no symmetry of U with that corner action");
  }
  // Reflection of U whose axis passes through corner v_i.
  int reflect_through(int i) const { return fixing_u(i, i, i + 1, i - 1); }
  // Rotation of U sending v_a to v_b.
  int rotate(int a, int b) const { return fixing_u(a, b, a + 1, b + 1); }

  int side_length() const { return S_; }

 private:
  std::unique_ptr<LayeredDodecahedron> d_;
  std::unique_ptr<LandmarkTable> lm_;
  std::unique_ptr<SymmetryTables> sym_;
  DistanceOracle oracle_;
  std::array<FieldView, dodeca::kFaces> face_;
  std::array<FieldView, 16> side_;
  std::vector<int> stab_;
  int S_ = 0;
};

}  // namespace lazycops
