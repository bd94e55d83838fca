#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <unordered_map>
#include <vector>

#include "lazycops/construct.hpp"

namespace lazycops {

// Vertex permutations of a layered dodecahedron induced by its 120
// symmetries, plus a canonical representative of every vertex orbit.
class SymmetryTables {
 public:
  explicit SymmetryTables(const LayeredDodecahedron& d) : d_(&d) {
    const std::size_t n = d.num_vertices();
    const int S = static_cast<int>(dodeca::symmetries().size());
    perm_.resize(S);
    for (int s = 0; s < S; ++s) {
      perm_[s].resize(n);
      for (Vertex v = 0; v < n; ++v) perm_[s][v] = d.map_vertex(s, v);
    }
    rep_.assign(n, kNoVertex);
    to_rep_.assign(n, 0);
    for (int s = 0; s < S; ++s)
      for (Vertex v = 0; v < n; ++v)
        if (perm_[s][v] < rep_[v]) {
          rep_[v] = perm_[s][v];
          to_rep_[v] = static_cast<std::uint8_t>(s);
        }
  }

  const LayeredDodecahedron& geometry() const { return *d_; }
  int count() const { return static_cast<int>(perm_.size()); }
  Vertex map(int s, Vertex v) const { return perm_[s][v]; }
  const std::vector<Vertex>& table(int s) const { return perm_[s]; }
  Vertex rep(Vertex v) const { return rep_[v]; }
  // A symmetry taking v to rep(v).
  int to_rep(Vertex v) const { return to_rep_[v]; }

 private:
  const LayeredDodecahedron* d_;
  std::vector<std::vector<Vertex>> perm_;
  std::vector<Vertex> rep_;
  std::vector<std::uint8_t> to_rep_;
};

using Field16 = std::vector<std::uint16_t>;

// Distances to one vertex: a BFS field from the orbit representative read
// through the permutation that carries the target onto it.
class FieldView {
 public:
  FieldView() = default;
  FieldView(std::shared_ptr<const Field16> f, const std::vector<Vertex>* perm)
      : f_(std::move(f)), perm_(perm) {}
  int operator[](Vertex u) const { return (*f_)[perm_ ? (*perm_)[u] : u]; }
  bool valid() const { return static_cast<bool>(f_); }

 private:
  std::shared_ptr<const Field16> f_;
  const std::vector<Vertex>* perm_ = nullptr;
};

// Exact distances on a layered dodecahedron with an LRU cache of BFS fields
// keyed by orbit representative. Not thread safe.
class DistanceOracle {
 public:
  DistanceOracle(const SymmetryTables& sym, std::size_t capacity = 256)
      : sym_(&sym), capacity_(capacity < 1 ? 1 : capacity) {}

  FieldView to(Vertex v) {
    int s = sym_->to_rep(v);
    return FieldView(rep_field(sym_->rep(v)), &sym_->table(s));
  }
  int distance(Vertex u, Vertex v) {
    if (u == v) return 0;
    return to(v)[u];
  }

  // Multi-source field, not cached.
  FieldView to_set(const std::vector<Vertex>& sources) const {
    auto f = std::make_shared<Field16>();
    std::vector<Vertex> queue;
    detail::bfs_into<std::uint16_t>(sym_->geometry().graph(), sources, *f, queue);
    return FieldView(std::move(f), nullptr);
  }

  std::size_t misses() const { return misses_; }
  std::size_t hits() const { return hits_; }
  std::size_t cached() const { return lru_.size(); }
  const SymmetryTables& symmetries() const { return *sym_; }

 private:
  std::shared_ptr<const Field16> rep_field(Vertex rep) {
    auto it = index_.find(rep);
    if (it != index_.end()) {
      ++hits_;
      lru_.splice(lru_.begin(), lru_, it->second);
      return it->second->second;
    }
    ++misses_;
    auto f = std::make_shared<Field16>();
    detail::bfs_into<std::uint16_t>(sym_->geometry().graph(), std::span<const Vertex>(&rep, 1), *f,
                                    queue_);
    lru_.emplace_front(rep, f);
    index_[rep] = lru_.begin();
    if (lru_.size() > capacity_) {
      index_.erase(lru_.back().first);
      lru_.pop_back();
    }
    return f;
  }

  const SymmetryTables* sym_;
  std::size_t capacity_;
  std::list<std::pair<Vertex, std::shared_ptr<const Field16>>> lru_;
  std::unordered_map<Vertex, decltype(lru_)::iterator> index_;
  std::vector<Vertex> queue_;
  std::size_t hits_ = 0, misses_ = 0;
};

}  // namespace lazycops
