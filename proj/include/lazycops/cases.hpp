#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lazycops/tactics.hpp"

namespace lazycops {

// Every key the case dispatcher and its refinements can report.
inline const std::vector<std::string>& case_labels() {
  static const std::vector<std::string> labels = {
      "A.1.1",       "A.1.2",       "A.1'",        "A.2.1",       "A.2.2",
      "A.2.3",       "B.1.1.1",     "B.1.1.2.1",   "B.1.1.2.2",   "B.1.2.1.1",
      "B.1.2.1.2.1", "B.1.2.1.2.2", "B.1.2.2",     "B.1.3",       "B.1'",
      "B.1''",       "B.1.1''",     "B.1.2''",     "B.1'''",      "B.2.1.1",
      "B.2.1.1.1.1", "B.2.1.1.1.2", "B.2.1.1.2",   "B.2.1.2",     "B.2.2",
      "C.1.1",       "C.1.1.1",     "C.1.1.2",     "C.1.1.3",     "C.1.1.4",
      "C.1.1.5",     "C.1.2",       "C.1'",        "C.1''",       "C.1'''",
      "C.1''''",     "C.2.1",       "C.2.2"};
  return labels;
}

inline bool is_case_label(const std::string& s) {
  const auto& l = case_labels();
  return std::find(l.begin(), l.end(), s) != l.end();
}

struct Dispatch {
  std::string label;    // dispatch-table key
  std::string program;  // which program runs; usually the label
  View view;
  std::map<std::string, long> cert;
  std::string note;
};

namespace cases {

// Predicates on a view, cops by role 1..3.
inline int dv(const View& w, int j, int i) { return w.d(w.cop(j), w.A().v(i)); }
inline int dx(const View& w, int j, Vertex x) { return w.d(w.cop(j), x); }
inline int dF(const View& w, int j, std::initializer_list<int> fs) {
  return w.A().to_faces(w.cop(j), fs);
}
inline int dB(const View& w, int j, int i) { return w.dB(w.cop(j), i); }
inline bool in(const View& w, int j, int f) { return w.in(w.cop(j), f); }
inline bool in_any(const View& w, int j, std::initializer_list<int> fs) {
  for (int f : fs)
    if (w.in(w.cop(j), f)) return true;
  return false;
}
inline bool in_U(const View& w, int j) { return w.in(w.cop(j), 0); }

// v_i is reachable from o before any cop: lambda_2, lambda_3 at >= 99 and
// lambda_1 at >= need1.
inline bool safe_corner(const View& w, int i, int need1) {
  return dv(w, 1, i) >= need1 && dv(w, 2, i) >= 99 && dv(w, 3, i) >= 99;
}

// Earliest arrival of each role in a face since start().
struct FirstIn {
  int face = 0;
  long t0 = 0;
  std::array<long, 3> at{-1, -1, -1};

  void start(const View& w, int f) {
    face = f;
    t0 = w.turns();
    at = {-1, -1, -1};
    for (int j = 1; j <= 3; ++j)
      if (in(w, j, f)) at[j - 1] = 0;
  }
  void update(const View& w) {
    for (int j = 1; j <= 3; ++j)
      if (at[j - 1] < 0 && in(w, j, face)) at[j - 1] = w.turns() - t0;
  }
  // Earliest role among rs that has arrived, or 0.
  int first(std::initializer_list<int> rs) const {
    int best = 0;
    for (int j : rs)
      if (at[j - 1] >= 0 && (best == 0 || at[j - 1] < at[best - 1])) best = j;
    return best;
  }
};

}  // namespace cases

// ---------------------------------------------------------------------------
// Exits: what to try once a program has reached a waypoint.

struct Exit {
  enum Kind { Centre, Route, Play } kind = Centre;
  int face = -1;
  Path path;
  std::vector<Exit> after;  // empty: certified centres around the end, then corner play
  std::string name;

  static Exit centre(int f) { return {Centre, f, {}, {}, "o" + std::to_string(f)}; }
  static Exit route(Path p, std::vector<Exit> after, std::string name) {
    return {Route, -1, std::move(p), std::move(after), std::move(name)};
  }
  static Exit play() { return {Play, -1, {}, {}, "play"}; }
};

inline Program corner_or_centres(View v, std::string what) {
  Arena& A = v.A();
  std::vector<int> faces = A.geo().faces_of(v.me());
  auto ok = certified_centres(v, faces);
  if (!ok.empty()) co_return co_await go_centre(v, ok, what);
  if (corner_of(v.me()) >= 0) co_return co_await corner_play(v, what);
  co_return Outcome::blocked(what + ": stranded off a corner");
}

// Takes the first exit whose certificate holds.
inline Program take_exits(View v, std::vector<Exit> xs, std::string what) {
  Arena& A = v.A();
  for (const auto& x : xs) {
    if (x.kind == Exit::Centre) {
      Path p = shortest_path(A, v.me(), A.o(x.face));
      if (!certified(v, p, what + "/" + x.name)) continue;
      Outcome r = co_await walk(v, p, Cert::Prefix, what + "/" + x.name);
      co_return r.kind == Outcome::Done ? Outcome::centre(x.face) : r;
    }
    if (x.kind == Exit::Route) {
      if (x.path.empty() || x.path.front() != v.me()) continue;
      if (!certified(v, x.path, what + "/" + x.name)) continue;
      Outcome r = co_await walk(v, x.path, Cert::Prefix, what + "/" + x.name);
      if (r.kind != Outcome::Done) co_return r;
      if (x.after.empty()) co_return co_await corner_or_centres(v, what + "/" + x.name);
      co_return co_await take_exits(v, x.after, what + "/" + x.name);
    }
    if (x.kind == Exit::Play && corner_of(v.me()) >= 0)
      co_return co_await corner_play(v, what + "/play");
  }
  co_return Outcome::blocked(what + ": no exit certified");
}

// Layer-n vertex at pos of face f, along ring n in direction dir to the
// projection of outer position `outer`, then out to it.
inline Path roundabout(const LayeredDodecahedron& G, int f, int n, int pos, int outer, int dir) {
  const int target = G.project(G.layers(), outer, n);
  return concat(G.ring_walk(f, n, pos, target, dir), radial_out(G, f, n, outer));
}

// Heads inward from the robber's vertex of face f (on a radial line), two
// edges per layer, while the layer exceeds stop(). Goes to the centre when
// centre() holds and that run is certified; otherwise follows route(n, pos)
// from the layer it stopped on and then the exits.
struct Inward {
  int face = 0;
  std::function<int()> stop;
  std::function<bool()> centre;
  std::function<Path(int, int)> route;
  std::vector<Exit> exits;
};

inline Program inward(View v, Inward in, std::string what) {
  Arena& A = v.A();
  const auto& G = A.geo();
  const int f = in.face;
  auto a = G.address_in(v.me(), f);
  int layer = a.layer, pos = a.pos;
  if (a.role != Role::Ring) throw std::logic_error(what + ": inward from a non-ring vertex");
  for (;;) {
    Path home = G.radial_in(f, layer, pos);
    if (in.centre && in.centre() && certified(v, home, what + "/centre")) {
      Outcome r = co_await walk(v, home, Cert::Prefix, what + "/centre");
      co_return r.kind == Outcome::Done ? Outcome::centre(f) : r;
    }
    const int s = std::clamp(in.stop(), 1, A.layers());
    if (layer <= s) break;
    Path leg = G.radial_between(f, layer, pos, layer - 1);
    if (!certified(v, home) && !certified(v, leg, what + "/leg"))
      co_return Outcome::blocked(what + ": inward leg not certified");
    Outcome r = co_await walk(v, leg, Cert::Prefix, what + "/leg");
    if (r.kind != Outcome::Done) co_return r;
    pos = G.project(layer, pos, layer - 1);
    --layer;
  }
  v.c->event("refine", "inward", {{"layer", layer}, {"face", f}}, what);
  Path p = in.route(layer, pos);
  if (!certified(v, p, what + "/route")) {
    Path home = G.radial_in(f, layer, pos);
    if (certified(v, home)) {
      Outcome r = co_await walk(v, home, Cert::Prefix, what + "/centre");
      co_return r.kind == Outcome::Done ? Outcome::centre(f) : r;
    }
    co_return Outcome::blocked(what + ": route not certified");
  }
  Outcome r = co_await walk(v, p, Cert::Prefix, what + "/route");
  if (r.kind != Outcome::Done) co_return r;
  co_return co_await take_exits(v, in.exits, what);
}

// ---------------------------------------------------------------------------
// Classification

namespace cases {

inline int home_face(Arena& A, Vertex robber) {
  for (int f = 0; f < dodeca::kFaces; ++f)
    if (A.o(f) == robber) return f;
  return -1;
}

// Symmetries sending the robber's centre to o and lambda_1 to a canonical
// neighbour of o (connector 12, 13 or 14), lowest index first.
inline std::vector<int> base_frames(Arena& A, Vertex robber, Vertex l1) {
  const auto& G = A.geo();
  std::vector<int> out;
  for (int s = 0; s < A.sym().count(); ++s) {
    if (A.sym().map(s, robber) != A.o(0)) continue;
    Vertex x = A.sym().map(s, l1);
    for (int pos : {12, 13, 14})
      if (x == G.center_connector(0, pos)) out.push_back(s);
  }
  return out;
}

inline Dispatch make(std::string label, const View& w, std::map<std::string, long> cert = {},
                     std::string note = {}) {
  Dispatch d;
  d.label = label;
  d.program = std::move(label);
  d.view = w;
  d.cert = std::move(cert);
  d.note = std::move(note);
  return d;
}

inline std::map<std::string, long> corner_certs(const View& w) {
  std::map<std::string, long> c;
  for (int j = 1; j <= 3; ++j)
    for (int i = 1; i <= 5; ++i)
      c["d_u" + std::to_string(j) + "_v" + std::to_string(i)] = dv(w, j, i);
  return c;
}

// Case A: all three cops in U.
inline Dispatch a1(const View& w0, const std::string& label) {
  for (const View& w : {w0, w0.swapped23()})
    if (dB(w, 2, 6) <= 2 && dB(w, 3, 7) <= 2)
      return make(label.empty() ? "A.1.1" : label, w,
                  {{"dB_u2_B6", dB(w, 2, 6)}, {"dB_u3_B7", dB(w, 3, 7)}}, "A.1.1");
  const View r = w0.then(w0.A().reflect_through(1));
  for (const View& w : {w0, w0.swapped23(), r, r.swapped23()})
    if (dB(w, 2, 6) >= 3 && dB(w, 3, 7) <= 2)
      return make(label.empty() ? "A.1.2" : label, w,
                  {{"dB_u2_B6", dB(w, 2, 6)}, {"dB_u3_B7", dB(w, 3, 7)}}, "A.1.2");
  for (const View& w : {w0, w0.swapped23(), r, r.swapped23()})
    if (dB(w, 2, 6) >= 3)
      return make(label.empty() ? "A.1.2" : label, w,
                  {{"dB_u2_B6", dB(w, 2, 6)}, {"dB_u3_B7", dB(w, 3, 7)}}, "A.1.2");
  // Not reachable: one of the two is at distance >= 3 or both are <= 2.
  return make(label.empty() ? "A.1.2" : label, w0, {}, "A.1.2 fallback frame");
}

inline bool a2_pattern(const View& w) {
  return dv(w, 2, 1) <= 98 && dv(w, 2, 5) <= 98 && dv(w, 3, 2) <= 98 && dv(w, 3, 3) <= 98;
}

inline Dispatch classify_A(const std::vector<View>& frames) {
  for (const View& w : frames)
    if (safe_corner(w, 1, 98)) {
      auto d = a1(w, "");
      return d;
    }
  const View& base = frames.front();
  for (int i = 2; i <= 5; ++i)
    if (safe_corner(base, i, 98)) {
      auto d = a1(base.then(base.A().rotate(i, 1)), "");
      d.note = d.program + " via v" + std::to_string(i);
      d.label = "A.1'";
      return d;
    }
  // No safe corner: search for the pattern with lambda_1 aligned with v4.
  std::vector<View> cand;
  for (const View& w : frames) {
    const View r = w.then(w.A().reflect_through(4));
    for (const View& x : {w, w.swapped23(), r, r.swapped23()}) cand.push_back(x);
  }
  const View* pick = nullptr;
  for (const View& w : cand)
    if (a2_pattern(w) && dv(w, 1, 4) == 97) {
      pick = &w;
      break;
    }
  if (!pick)
    for (const View& w : cand)
      if (a2_pattern(w)) {
        pick = &w;
        break;
      }
  std::string note;
  if (!pick) {
    pick = &cand.front();
    note = "A.2 pattern not found";
  }
  const View& w = *pick;
  Arena& A = w.A();
  const Vertex p = A.named("p"), q = A.named("q");
  std::map<std::string, long> cert = corner_certs(w);
  cert["d_u3_p"] = dx(w, 3, p);
  cert["d_u2_q"] = dx(w, 2, q);
  cert["B9_sum_23"] = dB(w, 2, 9) + dB(w, 3, 9);
  cert["B10_sum_23"] = dB(w, 2, 10) + dB(w, 3, 10);
  cert["B7_sum_23"] = dB(w, 2, 7) + dB(w, 3, 7);
  if (cert["d_u3_p"] >= 99) return make("A.2.1", w, cert, note);
  if (cert["d_u2_q"] >= 99) return make("A.2.2", w, cert, note);
  return make("A.2.3", w, cert, note);
}

// Case B: one cop in U (lambda_1). F is the ring of faces around v1 and v2.
inline bool inF(const View& w, int j) { return in_any(w, j, {10, 6, 1, 2, 7}); }

inline Dispatch b1(View w, const std::string& outer) {
  Arena& A = w.A();
  const bool f2 = inF(w, 2), f3 = inF(w, 3);
  auto lab = [&](const std::string& inner) { return outer.empty() ? inner : outer; };
  if (f2 && f3) {
    const bool n2 = dF(w, 2, {8, 9}) <= 1, n3 = dF(w, 3, {8, 9}) <= 1;
    if (n2 || n3) {
      if (!n2) w = w.swapped23();
      if (!in(w, 2, 7)) w = w.then(A.reflect_through(1));
      auto d = make(lab("B.1.1.1"), w, {{"dF_u2_U8U9", dF(w, 2, {8, 9})}});
      d.program = "B.1.1.1";
      return d;
    }
    const int near = (dF(w, 2, {3, 8}) <= 101) + (dF(w, 3, {3, 8}) <= 101);
    auto d = make(lab(near <= 1 ? "B.1.1.2.1" : "B.1.1.2.2"), w,
                  {{"dF_u2_U3U8", dF(w, 2, {3, 8})}, {"dF_u3_U3U8", dF(w, 3, {3, 8})}});
    d.program = near <= 1 ? "B.1.1.2.1" : "B.1.1.2.2";
    return d;
  }
  if (f2 || f3) {
    if (!f2) w = w.swapped23();
    if (dF(w, 3, {1, 2}) <= 99) {
      if (in(w, 3, 5) && !in(w, 3, 3)) w = w.then(A.reflect_through(1));
      std::map<std::string, long> cert{{"dF_u2_U1", dF(w, 2, {1})},
                                       {"dF_u2_U6", dF(w, 2, {6})},
                                       {"dF_u2_U5", dF(w, 2, {5})},
                                       {"d_u3_v3", dv(w, 3, 3)}};
      std::string key;
      if (cert["dF_u2_U6"] <= 39)
        key = "B.1.2.1.1";
      else if (cert["dF_u2_U5"] + cert["d_u3_v3"] <= 97)
        key = "B.1.2.1.2.1";
      else
        key = "B.1.2.1.2.2";
      auto d = make(lab(key), w, cert);
      d.program = key;
      return d;
    }
    auto d = make(lab("B.1.2.2"), w, {{"dF_u3_U1U2", dF(w, 3, {1, 2})}});
    d.program = "B.1.2.2";
    return d;
  }
  auto d = make(lab("B.1.3"), w, {{"dF_u2_U3", dF(w, 2, {3})}, {"dF_u3_U3", dF(w, 3, {3})}});
  d.program = "B.1.3";
  return d;
}

// v3 safe, v1 and v2 not.
inline Dispatch b1pp(View w, const std::string& label) {
  const bool f2 = inF(w, 2), f3 = inF(w, 3);
  if (f2 && f3) {
    const bool n2 = dF(w, 2, {8, 9}) <= 1, n3 = dF(w, 3, {8, 9}) <= 1;
    if (n2 != n3) {
      if (!n2) w = w.swapped23();
      return [&] {
        auto d = make(label.empty() ? "B.1.1''" : label, w, {{"in_U7", in(w, 2, 7)}});
        d.program = "B.1.1.1''";
        return d;
      }();
    }
    auto d = b1(w, label.empty() ? "B.1.1''" : label);
    return d;
  }
  if (f2 || f3) {
    if (!f2) w = w.swapped23();
    const bool near = dF(w, 3, {1, 2}) <= 99;
    auto d = make(label.empty() ? "B.1.2''" : label, w,
                  {{"dF_u3_U1U2", dF(w, 3, {1, 2})}, {"in_U5", in(w, 3, 5)}});
    d.program = near ? "B.1.2.1''" : "B.1.2.2''";
    return d;
  }
  auto d = make(label.empty() ? "B.1''" : label, w, {}, "no cop in F with v3 safe");
  d.program = "B.1.3";
  return d;
}

inline Dispatch classify_B(const std::vector<View>& frames) {
  View base = frames.front();
  Arena& A = base.A();
  // Roles: lambda_2, lambda_3 in engine order.
  for (const View& w : frames)
    if (safe_corner(w, 1, 99)) return b1(w, "");
  // lambda_1 midway between two corners has a mirrored frame too.
  for (const View& w : frames)
    if (safe_corner(w, 2, 99)) return b1(w.then(A.reflect_through(4)), "B.1'");
  for (const View& w : frames)
    if (safe_corner(w, 3, 99)) return b1pp(w, "");
  for (const View& w : frames)
    if (safe_corner(w, 5, 99)) return b1pp(w.then(A.reflect_through(4)), "B.1'''");
  // Case B.2: lambda_2 in U1, lambda_3 in U3.
  View w = base;
  if (!(in(w, 2, 1) && in(w, 3, 3)) && in(w, 3, 1) && in(w, 2, 3)) w = w.swapped23();
  std::string note = in(w, 2, 1) && in(w, 3, 3) ? "" : "B.2 pattern not found";
  std::map<std::string, long> cert{{"d_u3_v3", dv(w, 3, 3)}, {"d_u2_v5", dv(w, 2, 5)}};
  if (cert["d_u3_v3"] <= 11) {
    std::string key = cert["d_u2_v5"] >= 12 ? "B.2.1.1" : "B.2.1.2";
    return make(key, w, cert, note);
  }
  auto d = make("B.2.2", w.then(A.reflect_through(4)).swapped23(), cert, note);
  d.program = "B.2.1.1";
  return d;
}

// Case C: two cops in U; lambda_2 is the one outside.
inline Dispatch c1(View w, const std::string& outer) {
  Arena& A = w.A();
  auto lab = [&](const std::string& inner) { return outer.empty() ? inner : outer; };
  if (inF(w, 2)) {
    std::map<std::string, long> cert = corner_certs(w);
    if (dv(w, 2, 5) <= 98) {
      auto d = make(lab("C.1.1"), w, cert);
      d.program = "C.1.1";
      return d;
    }
    // Which pair of adjacent corners of U the third cop sits nearest.
    const std::array<std::pair<int, int>, 5> pairs{
        {{5, 4}, {3, 4}, {2, 3}, {1, 2}, {1, 5}}};
    int best = 0, best_d = 1 << 20;
    for (int k = 0; k < 5; ++k) {
      int m = std::max(dv(w, 3, pairs[k].first), dv(w, 3, pairs[k].second));
      if (m < best_d) {
        best = k;
        best_d = m;
      }
    }
    std::string key = "C.1.1." + std::to_string(best + 1);
    auto d = make(lab(key), w, cert);
    d.program = key;
    return d;
  }
  (void)A;
  auto d = make(lab("C.1.2"), w,
                {{"dF_u2_U1U2", dF(w, 2, {1, 2})}, {"dF_u3_U1U2", dF(w, 3, {1, 2})}});
  d.program = "C.1.2";
  return d;
}

inline Dispatch classify_C(const std::vector<View>& frames) {
  View base = frames.front();
  Arena& A = base.A();
  if (in_U(base, 2)) base = base.swapped23();
  std::vector<View> fr;
  for (const View& f : frames) fr.push_back(in_U(f, 2) ? f.swapped23() : f);
  for (const View& w : fr)
    if (safe_corner(w, 1, 98)) return c1(w, "");
  std::map<std::string, long> cert = corner_certs(base);
  if (safe_corner(base, 2, 98)) {
    View w = base;
    if (dv(w, 1, 4) == 97) {
      auto d = c1(w.then(A.reflect_through(4)), "C.1'");
      return d;
    }
    auto d = make("C.1'", w, cert);
    d.program = "C.1'";
    return d;
  }
  if (safe_corner(base, 3, 98)) {
    // lambda_1 on the v5 side of U, as the case assumes.
    View w = base;
    if (dv(w, 1, 5) > dv(w, 1, 1)) w = w.then(A.reflect_through(3));
    auto d = make("C.1''", w, corner_certs(w));
    d.program = inF(w, 2) ? "C.1.2" : "C.1''";
    return d;
  }
  if (safe_corner(base, 5, 98)) {
    View w = base.then(A.reflect_through(4));
    auto d = make("C.1'''", w, corner_certs(w));
    d.program = inF(w, 2) ? "C.1.2" : "C.1''";
    return d;
  }
  if (safe_corner(base, 4, 98)) {
    auto d = make("C.1''''", base, cert);
    d.program = "C.1''''";
    return d;
  }
  // No safe corner: the two patterns, in the base frame or its mirror.
  auto p21 = [](const View& w) {
    return dv(w, 2, 2) <= 98 && dv(w, 2, 3) <= 98 && dv(w, 3, 1) <= 98 && dv(w, 3, 5) <= 98;
  };
  auto p22 = [](const View& w) {
    return dv(w, 2, 1) <= 98 && dv(w, 2, 5) <= 98 && dv(w, 3, 2) <= 98 && dv(w, 3, 3) <= 98;
  };
  for (const View& w : {base, base.then(A.reflect_through(4))}) {
    if (p21(w)) return make("C.2.1", w, corner_certs(w));
    if (p22(w)) return make("C.2.2", w, corner_certs(w));
  }
  return make("C.2.2", base, cert, "C.2 pattern not found");
}

}  // namespace cases

// Classifies the position with the robber at a centre and exactly one cop
// adjacent to it.
inline Dispatch classify_case(Ctx& c) {
  Arena& A = c.A;
  if (c.cops.size() != 3) throw PreconditionError("classify_case: needs three cops");
  if (cases::home_face(A, c.robber) < 0)
    throw PreconditionError("classify_case: robber is not at a centre");
  int adjacent = -1, count = 0;
  for (int i = 0; i < 3; ++i)
    if (A.graph().has_edge(c.cops[i], c.robber)) {
      adjacent = i;
      ++count;
    }
  if (count != 1) throw PreconditionError("classify_case: needs exactly one adjacent cop");
  std::array<int, 3> roles{adjacent, 0, 0};
  {
    int n = 1;
    for (int i = 0; i < 3; ++i)
      if (i != adjacent) roles[n++] = i;
  }
  auto fs = cases::base_frames(A, c.robber, c.cops[adjacent]);
  if (fs.empty()) throw std::logic_error("classify_case: no normalizing symmetry");
  std::vector<View> frames;
  for (int s : fs) frames.emplace_back(c, s, roles);
  const View& base = frames.front();
  int inU = 1 + cases::in_U(base, 2) + cases::in_U(base, 3);
  Dispatch d = inU == 3 ? cases::classify_A(frames)
               : inU == 1 ? cases::classify_B(frames)
                          : cases::classify_C(frames);
  d.cert["lambda1_pos"] = static_cast<long>(A.geo().address_in(base.cop(1), 0).pos);
  return d;
}

// ---------------------------------------------------------------------------
// Case programs. Views carry the frame and cop roles chosen by the dispatcher.

namespace cases {

inline void refine(const View& w, const std::string& key, std::map<std::string, long> cert = {}) {
  w.c->state.label = key;
  w.c->event("refine", "case", std::move(cert), key);
}

inline Path spoke_to(const View& w, Vertex x) { return w.A().geo().spoke(0, x); }
inline Path side(const View& w, Vertex a, Vertex b) {
  return w.A().geo().edge_path(static_cast<int>(a), static_cast<int>(b));
}

// Lemma 5 from this view rotated by v_from -> v1 (0 = no rotation).
inline Program lemma5(View w, int from, int target_pos, std::string what) {
  if (from) w = w.then(w.A().rotate(from, 1));
  auto chk = centre_escape_preconditions(w, target_pos);
  if (!chk.ok) w.c->event("divergence", "center-escape", chk.cert, what + ": " + chk.why);
  co_return co_await centre_escape(w, target_pos, what);
}

inline Program a1_1(View w, std::string what) {
  const int L = w.A().layers();
  View r = w.then(w.A().rotate(3, 1));
  int target = L + 1;
  if (!centre_escape_preconditions(r, L + 1).ok && centre_escape_preconditions(r, L).ok)
    target = L;
  co_return co_await lemma5(w, 3, target, what);
}

inline Program a1_2(View w, std::string what) {
  Arena& A = w.A();
  const long s3 = w.skips(3);
  Outcome r = co_await depart(w, spoke_to(w, A.v(1)), what + "/o->v1");
  if (r.kind != Outcome::Done) co_return r;
  const long still = w.skips(3) - s3;
  Exit q1 = Exit::route(side(w, A.v(1), A.q(1)), {Exit::centre(6), Exit::play()}, "v1->q1");
  if (still > 2)
    {
    std::vector<Exit> ex_{q1, Exit::centre(1), Exit::centre(2), Exit::play()};
    co_return co_await take_exits(
        w, std::move(ex_), what);
  };
  {
    std::vector<Exit> ex_{Exit::centre(1), Exit::centre(2), q1, Exit::play()};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
}

// Leaves o for corner v_i, then the exits.
inline Program via_corner(View w, int i, std::vector<Exit> exits, std::string what,
                          std::function<void()> on_turn = {}) {
  Arena& A = w.A();
  Outcome r =
      co_await depart(w, spoke_to(w, A.v(i)), what + "/o->v" + std::to_string(i), on_turn);
  if (r.kind != Outcome::Done) co_return r;
  co_return co_await take_exits(w, std::move(exits), what);
}

inline Exit corner_route(const View& w, Vertex a, Vertex b, std::vector<int> centres,
                         bool play = true) {
  std::vector<Exit> after;
  for (int f : centres) after.push_back(Exit::centre(f));
  if (play) after.push_back(Exit::play());
  return Exit::route(side(w, a, b), std::move(after),
                     std::to_string(a) + "->" + std::to_string(b));
}

inline std::vector<Exit> centres_then_play(std::initializer_list<int> fs) {
  std::vector<Exit> out;
  for (int f : fs) out.push_back(Exit::centre(f));
  out.push_back(Exit::play());
  return out;
}

// B.2.1.1 and everything routed through it: toward m5.
inline Program toward_m5(View w, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  FirstIn fi;
  fi.start(w, 5);
  const long z0 = w.moves(1);
  auto watch = [&] { fi.update(w); };
  Outcome r = co_await depart(w, spoke_to(w, G.ring(0, L, 3 * S + L + 1)), what + "/o->m5", watch);
  if (r.kind != Outcome::Done) co_return r;
  const long z = w.moves(1) - z0;
  const Path to_v4 = G.ring_walk(0, L, 3 * S + L + 1, 3 * S, -1);
  const Exit v4_exit = Exit::route(
      to_v4, {Exit::centre(5), corner_route(w, A.v(4), A.q(4), {9}), Exit::play()}, "m5->v4");
  if (!in(w, 1, 5) && !in(w, 2, 5) && !in(w, 3, 5)) {
    refine(w, "B.2.1.1", {{"z", z}});
    {
    std::vector<Exit> ex_{Exit::centre(5), v4_exit};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  }
  const int first = fi.first({1, 2});
  if (z >= 47 && first == 1) {
    refine(w, "B.2.1.1.1.1", {{"z", z}});
    Inward in;
    in.face = 5;
    in.stop = [] { return 4; };
    in.route = [&G, S, L](int n, int pos) { return roundabout(G, 5, n, pos, 3 * S + L + 1, -1); };
    in.exits = {Exit::centre(10),
                Exit::route(G.ring_walk(5, L, 3 * S + L + 1, 3 * S, -1), {}, "t19->s5")};
    co_return co_await inward(w, std::move(in), what + "/fig3f");
  }
  if (z >= 47) {
    const long ell = std::max(0, w.d(w.me(), A.o(5)) - dx(w, 2, A.o(5)));
    const long j0 = w.skips(2);
    refine(w, "B.2.1.1.1.2", {{"z", z}, {"l", ell}});
    Inward in;
    in.face = 5;
    in.stop = [&w, ell, j0] { return static_cast<int>(4 + ell - (w.skips(2) - j0)); };
    in.centre = [&w, ell, j0] { return w.skips(2) - j0 > ell; };
    in.route = [&G, S](int n, int pos) { return roundabout(G, 5, n, pos, 2 * S, +1); };
    in.exits = centres_then_play({9, 4, 5});
    co_return co_await inward(w, std::move(in), what + "/inward-U5");
  }
  refine(w, "B.2.1.1.2", {{"z", z}});
  {
    std::vector<Exit> ex_{v4_exit, Exit::centre(5), Exit::centre(4)};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
}

// B.2.1.2: toward m2, then around to q1 or q2.
inline Program toward_m2(View w, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  FirstIn fi;
  fi.start(w, 2);
  auto watch = [&] { fi.update(w); };
  Outcome r = co_await depart(w, spoke_to(w, G.ring(0, L, L + 1)), what + "/o->m2", watch);
  if (r.kind != Outcome::Done) co_return r;
  const Path to_v1 = G.ring_walk(0, L, L + 1, 0, -1);
  const Exit v1_exit = Exit::route(to_v1, centres_then_play({1, 2}), "m2->v1");
  if (!in(w, 1, 2) && !in(w, 2, 2) && !in(w, 3, 2))
    {
    std::vector<Exit> ex_{Exit::centre(2), v1_exit};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  int first = fi.first({3, 2});
  if (first == 0) first = in(w, 3, 2) ? 3 : 2;
  const long ell = std::max(0, w.d(w.me(), A.o(2)) - dx(w, first, A.o(2)));
  const long j0 = w.skips(first);
  w.c->event("refine", "case", {{"first", first}, {"l", ell}}, "B.2.1.2 inward in U2");
  Inward in;
  in.face = 2;
  in.stop = [&w, ell, j0, first] { return static_cast<int>(4 + ell - (w.skips(first) - j0)); };
  in.centre = [&w, ell, j0, first] { return w.skips(first) - j0 > ell; };
  if (first == 3) {
    in.route = [&G, S](int n, int pos) { return roundabout(G, 2, n, pos, 2 * S, +1); };
    in.exits = centres_then_play({6, 1, 2});
  } else {
    in.route = [&G, S](int n, int pos) { return roundabout(G, 2, n, pos, 4 * S, -1); };
    in.exits = centres_then_play({7, 2, 3});
  }
  co_return co_await inward(w, std::move(in), what + "/inward-U2");
}

// Toward m4 with lambda_1's moves z (B.1.2.1.2.2 with d' >= 12).
inline Program toward_m4(View w, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  FirstIn fi;
  fi.start(w, 4);
  const long z0 = w.moves(1);
  auto watch = [&] { fi.update(w); };
  Outcome r =
      co_await depart(w, spoke_to(w, G.ring(0, L, 2 * S + L + 1)), what + "/o->m4", watch);
  if (r.kind != Outcome::Done) co_return r;
  const long z = w.moves(1) - z0;
  const Exit v4q4 = Exit::route(
      G.ring_walk(0, L, 2 * S + L + 1, 3 * S, +1),
      {corner_route(w, A.v(4), A.q(4), {9}), Exit::centre(5), Exit::centre(4), Exit::play()},
      "m4->v4");
  if (!in(w, 1, 4) && !in(w, 2, 4) && !in(w, 3, 4))
    {
    std::vector<Exit> ex_{Exit::centre(4), v4q4};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  int first = fi.first({1, 3});
  if (first == 0) first = in(w, 1, 4) ? 1 : 3;
  if (z >= 48) {
    const long ell = std::max(0, w.d(w.me(), A.o(4)) - dx(w, first, A.o(4)));
    const long j0 = w.skips(first);
    w.c->event("refine", "case", {{"z", z}, {"first", first}, {"l", ell}}, "m4: inward in U4");
    Inward in;
    in.face = 4;
    in.stop = [&w, ell, j0, first] {
      return static_cast<int>(4 + ell - (w.skips(first) - j0));
    };
    in.centre = [&w, ell, j0, first] { return w.skips(first) - j0 > ell; };
    in.route = [&G, S](int n, int pos) { return roundabout(G, 4, n, pos, 4 * S, -1); };
    in.exits = {Exit::centre(9), corner_route(w, A.q(4), A.s(4), {8, 9}), Exit::centre(4),
                Exit::play()};
    co_return co_await inward(w, std::move(in), what + "/inward-U4");
  }
  if (dv(w, 2, 5) >= 3 || first == 3) {
    w.c->event("refine", "case", {{"z", z}}, "m4: along B9 to v4");
    {
    std::vector<Exit> ex_{v4q4, Exit::centre(4)};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  }
  w.c->event("refine", "case", {{"z", z}}, "m4: fig3e");
  Inward in;
  in.face = 4;
  in.stop = [] { return 20; };
  in.route = [&G, S, L](int n, int pos) { return roundabout(G, 4, n, pos, 2 * S + L + 1, +1); };
  in.exits = {Exit::centre(8),
              Exit::route(G.ring_walk(4, L, 2 * S + L + 1, 3 * S, +1), {}, "t15->s4")};
  co_return co_await inward(w, std::move(in), what + "/fig3e");
}

// B.1.2.1.1: via v5 and, when cornered there, the detour through U5.
inline Program b1211(View w, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  if (dF(w, 2, {1}) >= 3)
    co_return co_await via_corner(w, 5, centres_then_play({1, 5}), what);
  Outcome r = co_await depart(w, spoke_to(w, A.v(5)), what + "/o->v5");
  if (r.kind != Outcome::Done) co_return r;
  if (w.cop(2) != A.q(5) && (w.cop(1) != A.v(4) || (in(w, 2, 5) && !in(w, 2, 1))))
    co_return co_await take_exits(w, centres_then_play({5, 1}), what);
  // Fig 3a: down U5 to layer 2, around to the q5 corner, out to z3.
  const std::vector<int> only5{5};
  Path t1 = G.radial_between(5, L, 0, 2);
  if (!certified(w, t1, what + "/v5->t1"))
    co_return co_await take_exits(w, centres_then_play({5, 1}), what);
  r = co_await walk(w, t1, Cert::Prefix, what + "/v5->t1");
  if (r.kind != Outcome::Done) co_return r;
  if (certified_centres(w, {5}).size() == 1)
    co_return co_await go_centre(w, only5, what + "/t1->o5");
  const int d10 = dx(w, 2, A.o(10));
  Path t1z3 = concat(G.ring_walk(5, 2, 0, 4 * G.side_length(2), -1),
                     radial_out(G, 5, 2, 3 * S + 53));
  r = co_await walk(w, t1z3, Cert::Strict, what + "/t1->z3");
  if (r.kind != Outcome::Done) {
    if (r.kind == Outcome::Blocked && w.me() == t1.back())
      co_return co_await go_centre(w, only5, what + "/t1->o5");
    co_return r;
  }
  const long ell = d10 - dx(w, 2, A.o(10));
  const bool q5_close = dx(w, 2, A.q(5)) <= 48 || dx(w, 1, A.q(5)) <= 48;
  const Exit to_s5 = Exit::route(G.ring_walk(5, L, 3 * S + 53, 3 * S, -1),
                                 centres_then_play({9, 10, 5}), "z3->s5");
  const Exit to_q5 =
      Exit::route(G.ring_walk(5, L, 3 * S + 53, 4 * S, +1), {Exit::play()}, "z3->q5");
  if (ell >= 43) {
    refine(w, "B.1.2.1.1", {{"l", ell}});
    std::vector<Exit> ex_{to_q5, to_s5};
    if (q5_close) std::swap(ex_[0], ex_[1]);
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  const bool m6_branch = dx(w, 2, A.q(5)) <= 47 || dx(w, 1, A.q(5)) <= 48;
  if (!m6_branch) {
    std::vector<Exit> ex_{to_q5, to_s5};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  Path to_m6 = G.ring_walk(5, L, 3 * S + 53, 3 * S + L + 1, -1);
  r = co_await walk(w, to_m6, Cert::Strict, what + "/z3->m6");
  if (r.kind != Outcome::Done) co_return r;
  const long j0 = w.skips(2);
  Inward in;
  in.face = 10;
  in.stop = [&w, ell, j0] { return static_cast<int>(7 + ell - (w.skips(2) - j0)); };
  in.centre = [&w, ell, j0] { return w.skips(2) - j0 > ell + 3; };
  in.route = [&G, S](int n, int pos) { return roundabout(G, 10, n, pos, 2 * S, +1); };
  in.exits = centres_then_play({11, 9, 10});
  co_return co_await inward(w, std::move(in), what + "/inward-U10");
}

// B.1.2.1.2.2. `far` forces the d' >= 12 branch.
inline Program b12122(View w, bool far, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  if (far || dv(w, 3, 3) >= 12) {
    if (dv(w, 1, 4) > 97)
      {
    std::vector<Exit> ex_{corner_route(w, A.v(4), A.q(4), {9, 5, 4}), Exit::centre(5), Exit::centre(4),
                 Exit::play()};
    co_return co_await via_corner(
          w, 4, std::move(ex_),
          what);
  };
    co_return co_await toward_m4(w, what);
  }
  if (dx(w, 2, A.q(1)) >= 98) {
    refine(w, "B.1.2.1.2.2", {{"d_u2_q1", dx(w, 2, A.q(1))}});
    Outcome r = co_await depart(w, spoke_to(w, A.v(1)), what + "/o->v1");
    if (r.kind != Outcome::Done) co_return r;
    // Fig 3d: inward in U2 to layer 21 under v1, around to the middle of
    // q1-s2, out, then along to s2.
    const int n = 21, Sn = G.side_length(n);
    Inward in;
    in.face = 2;
    in.stop = [n] { return n; };
    in.centre = [] { return true; };
    in.route = [&G, S, L, n, Sn](int, int) {
      Path p = G.ring_walk(2, n, Sn, 2 * Sn + n + 1, +1);
      p = concat(p, radial_out(G, 2, n, 2 * S + L + 1));
      return concat(p, G.ring_walk(2, L, 2 * S + L + 1, 3 * S, +1));
    };
    in.exits = centres_then_play({6, 7, 2});
    co_return co_await inward(w, std::move(in), what + "/fig3d");
  }
  co_return co_await b1211(w, what);
}

inline Program b122(View w, std::string what) {
  Arena& A = w.A();
  if (!w.A().on_side(w.cop(2), 1))
    return via_corner(w, 1, centres_then_play({1, 2}), what);
  if (in(w, 3, 11))
    return via_corner(w, 3, centres_then_play({4, 3}), what);
  if (dF(w, 3, {2, 3, 7}) >= 50 && dF(w, 3, {7}) >= 196)
    return via_corner(
        w, 2, {Exit::centre(3), corner_route(w, A.v(2), A.q(2), {7}), Exit::play()}, what);
  if (dF(w, 3, {1, 5, 10}) >= 50 && dF(w, 3, {10}) >= 196)
    return via_corner(
        w, 5, {Exit::centre(1), corner_route(w, A.v(5), A.q(5), {10}), Exit::play()}, what);
  w.c->event("divergence", "case", {{"dF_u3_U10", dF(w, 3, {10})}}, "B.1.2.2 default to v1");
  return via_corner(w, 1, centres_then_play({1, 2}), what);
}

inline Program b13(View w, std::string what) {
  Arena& A = w.A();
  const int in3 = in(w, 2, 3) + in(w, 3, 3);
  if (in3 <= 1 && (dv(w, 2, 1) < 99 || dv(w, 3, 1) < 99))
    return via_corner(
        w, 3, {Exit::centre(4), corner_route(w, A.v(3), A.q(3), {8}), Exit::play()}, what);
  return via_corner(
      w, 1, {Exit::centre(1), Exit::centre(2), corner_route(w, A.v(1), A.q(1), {6}), Exit::play()},
      what);
}

inline Program b111(View w, std::string what) {
  Arena& A = w.A();
  if (A.on_side(w.cop(3), 1)) {
    std::vector<Exit> ex;
    if (w.cop(1) != A.v(4)) ex.push_back(Exit::centre(5));
    ex.push_back(Exit::play());
    co_return co_await via_corner(w, 5, ex, what);
  }
  const long m3 = w.moves(3);
  Outcome r = co_await depart(w, spoke_to(w, A.v(1)), what + "/o->v1");
  if (r.kind != Outcome::Done) co_return r;
  if (w.moves(3) == m3)
    co_return co_await take_exits(w, centres_then_play({1, 2}), what);
  {
    std::vector<Exit> ex_{Exit::play()};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
}

inline Program b1121(View w, std::string what) {
  Arena& A = w.A();
  Outcome r = co_await depart(w, spoke_to(w, A.v(3)), what + "/o->v3");
  if (r.kind != Outcome::Done) co_return r;
  Exit q3 = corner_route(w, A.v(3), A.q(3), {8, 3, 4});
  if (A.on_side(w.cop(1), 9))
    {
    std::vector<Exit> ex_{q3, Exit::centre(4), Exit::play()};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
  {
    std::vector<Exit> ex_{Exit::centre(4), q3, Exit::play()};
    co_return co_await take_exits(w, std::move(ex_), what);
  }
}

inline Program b1_pp(View w, const std::string& program, std::string what) {
  Arena& A = w.A();
  if (program == "B.1.1.1''") {
    if (in(w, 2, 7))
      return via_corner(
          w, 5, {corner_route(w, A.v(5), A.q(5), {5, 10, 1}), Exit::centre(5), Exit::play()},
          what);
    return via_corner(w, 3, centres_then_play({4}), what);
  }
  if (program == "B.1.2.1''") {
    if (in(w, 3, 3)) return b12122(w, true, what);
    return via_corner(
        w, 3, {Exit::centre(3), corner_route(w, A.v(3), A.q(3), {8}), Exit::centre(4),
               Exit::play()},
        what);
  }
  // B.1.2.2''
  if (dx(w, 3, A.q(5)) >= 196 && dF(w, 3, {10}) >= 99)
    return via_corner(
        w, 5, {Exit::centre(1), corner_route(w, A.v(5), A.q(5), {10}), Exit::play()}, what);
  return via_corner(
      w, 3, {Exit::centre(3), Exit::centre(4), corner_route(w, A.v(3), A.q(3), {8}), Exit::play()},
      what);
}

inline Program c11(View w, std::string what) {
  Arena& A = w.A();
  const int L = A.layers();
  if (dv(w, 3, 5) <= 98) return via_corner(w, 2, {Exit::play()}, what);
  if (dv(w, 2, 5) >= 12) return toward_m5(w, what);
  if (dB(w, 3, 7) <= 50) return lemma5(w, 3, L, what);
  return via_corner(
      w, 1, {Exit::centre(2), corner_route(w, A.v(1), A.q(1), {6}), Exit::centre(1), Exit::play()},
      what);
}

inline Program c11x(View w, int which, std::string what) {
  Arena& A = w.A();
  auto v3q3 = [&] {
    return std::vector<Exit>{Exit::centre(4), corner_route(w, A.v(3), A.q(3), {8}), Exit::play()};
  };
  auto v5q5 = [&] {
    return std::vector<Exit>{Exit::centre(5), corner_route(w, A.v(5), A.q(5), {10}),
                             Exit::play()};
  };
  switch (which) {
    case 1:
      if (dF(w, 3, {4}) + dF(w, 2, {3}) >= 5) return via_corner(w, 3, v3q3(), what);
      return via_corner(
          w, 1, {Exit::centre(1), corner_route(w, A.v(1), A.q(1), {6}), Exit::play()}, what);
    case 2:
      if (w.cop(2) != A.q(1))
        return via_corner(w, 1, centres_then_play({1, 2}), what);
      if (dB(w, 3, 10) >= 50) return via_corner(w, 5, v5q5(), what);
      return via_corner(
          w, 2, {Exit::centre(3), corner_route(w, A.v(2), A.q(2), {7}), Exit::play()}, what);
    case 3:
    case 4: return via_corner(w, 5, v5q5(), what);
    default:
      if (dv(w, 2, 2) <= 98 || w.cop(2) == A.q(2))
        return via_corner(w, 3, v3q3(), what);
      return via_corner(w, 2, centres_then_play({2, 3}), what);
  }
}

inline Program c12(View w, std::string what) {
  Arena& A = w.A();
  if (dF(w, 2, {1, 2}) >= 3 || dF(w, 3, {1, 2}) >= 3)
    return via_corner(
        w, 1, {Exit::centre(1), Exit::centre(2), corner_route(w, A.v(1), A.q(1), {6}), Exit::play()},
        what);
  return lemma5(w, 3, A.layers(), what);
}

// Fig 2a: from v1 into U1 to layer 46, around to the q1 corner, out to q1.
inline Program fig2a(View w, std::string what) {
  Arena& A = w.A();
  const auto& G = A.geo();
  const int L = A.layers(), S = G.side_length(L);
  Outcome r = co_await depart(w, spoke_to(w, A.v(1)), what + "/o->v1");
  if (r.kind != Outcome::Done) co_return r;
  const std::vector<int> only1{1};
  if (!certified_centres(w, only1).empty()) co_return co_await go_centre(w, only1, what);
  Inward in;
  in.face = 1;
  in.stop = [] { return 46; };
  in.centre = [] { return true; };
  // U1 = (v1, v5, q5, s1, q1): v1 at 0, q1 at 4S.
  in.route = [&G, S](int n, int pos) { return roundabout(G, 1, n, pos, 4 * S, -1); };
  in.exits = {Exit::centre(6), corner_route(w, A.q(1), A.s(1), {10}), Exit::play()};
  co_return co_await inward(w, std::move(in), what + "/fig2a");
}

// Some first step from o toward v_i has no cop on or next to it.
inline bool can_leave(const View& w, int i) {
  Path p = guarded_start(w, spoke_to(w, w.A().v(i)));
  return p.size() >= 2 && guard_ok(w, p[1]);
}

inline Program c1pp(View w, std::string what) {
  Arena& A = w.A();
  auto near = [&](int a, int b) { return dv(w, 3, a) <= 98 && dv(w, 3, b) <= 98; };
  // lambda_3 deep in U can be near every pair; the branches are tried in
  // order and one that would start next to a cop is skipped.
  if (near(4, 3) && can_leave(w, 1)) return fig2a(w, what);
  if (near(4, 5)) {
    if (dF(w, 3, {1}) >= 98 && can_leave(w, 1)) return fig2a(w, what);
    if (can_leave(w, 3))
      return via_corner(
          w, 3, {Exit::centre(4), corner_route(w, A.v(3), A.q(3), {8}), Exit::play()}, what);
  }
  if ((dF(w, 2, {9}) <= 97 || dF(w, 3, {2}) >= 3) && can_leave(w, 1))
    return via_corner(
        w, 1, {Exit::centre(1), Exit::centre(2), corner_route(w, A.v(1), A.q(1), {6}), Exit::play()},
        what);
  if (can_leave(w, 4) || !can_leave(w, 3))
    return via_corner(
        w, 4, {Exit::centre(4), corner_route(w, A.v(4), A.q(4), {9}), Exit::play()}, what);
  return via_corner(
      w, 3, {Exit::centre(4), Exit::centre(3), corner_route(w, A.v(3), A.q(3), {8}), Exit::play()},
      what);
}

inline Program c1p(View w, std::string what) {
  Arena& A = w.A();
  if (dv(w, 3, 3) > 100) return via_corner(w, 3, centres_then_play({4, 3}), what);
  if (dv(w, 3, 4) > 100)
    return via_corner(
        w, 4, {Exit::centre(5), Exit::centre(4), corner_route(w, A.v(4), A.q(4), {9}), Exit::play()},
        what);
  if (dB(w, 3, 8) >= 2)
    return via_corner(
        w, 2, {Exit::centre(3), Exit::centre(2), corner_route(w, A.v(2), A.q(2), {7}), Exit::play()},
        what);
  return via_corner(w, 4, {corner_route(w, A.v(4), A.q(4), {9}), Exit::play()}, what);
}

inline Program c1pppp(View w, std::string what) {
  Arena& A = w.A();
  if (dv(w, 2, 4) < dv(w, 3, 4)) w = w.swapped23();
  return via_corner(
      w, 4, {Exit::centre(5), corner_route(w, A.v(4), A.q(4), {9}), Exit::play()}, what);
}

// The B.2.2 program: B.2.1.1 mirrored through v4 with lambda_2, lambda_3 swapped.
inline Program b22_program(View w, std::string what) {
  return toward_m5(w.then(w.A().reflect_through(4)).swapped23(), what);
}

inline Program c21(View w, std::string what) {
  const int L = w.A().layers();
  if (dv(w, 2, 3) >= 12) return b22_program(w, what);
  if (dx(w, 3, w.A().m(2)) <= 98) return toward_m5(w, what);
  return lemma5(w, 0, L + 1, what);
}

inline Program c22(View w, std::string what) {
  const int L = w.A().layers();
  if (dv(w, 2, 5) >= 12) return toward_m5(w, what);
  if (dx(w, 3, w.A().m(2)) >= 99) return lemma5(w, 0, L + 1, what);
  return b22_program(w, what);
}

}  // namespace cases

// The program for a dispatched case.
inline Program case_program(const Dispatch& d) {
  using namespace cases;
  const View& w = d.view;
  const std::string& p = d.program;
  const std::string what = d.label;
  const int L = w.A().layers();
  if (p == "A.1.1") return a1_1(w, what);
  if (p == "A.1.2") return a1_2(w, what);
  if (p == "A.2.1") return lemma5(w, 3, L, what);
  if (p == "A.2.2") return lemma5(w, 4, L, what);
  if (p == "A.2.3") return lemma5(w, 0, L + 1, what);
  if (p == "B.1.1.1") return b111(w, what);
  if (p == "B.1.1.2.1") return b1121(w, what);
  if (p == "B.1.1.2.2") return via_corner(w, 5, {Exit::play()}, what);
  if (p == "B.1.2.1.1") return b1211(w, what);
  if (p == "B.1.2.1.2.1") {
    Arena& A = w.A();
    return via_corner(w, 1,
                      {Exit::centre(2), corner_route(w, A.v(1), A.q(1), {6, 2}), Exit::centre(1),
                       Exit::play()},
                      what);
  }
  if (p == "B.1.2.1.2.2") return b12122(w, false, what);
  if (p == "B.1.2.2") return b122(w, what);
  if (p == "B.1.3") return b13(w, what);
  if (p == "B.1.1.1''" || p == "B.1.2.1''" || p == "B.1.2.2''") return b1_pp(w, p, what);
  if (p == "B.2.1.1") return toward_m5(w, what);
  if (p == "B.2.1.2") return toward_m2(w, what);
  if (p == "C.1.1") return c11(w, what);
  if (p.rfind("C.1.1.", 0) == 0) return c11x(w, p.back() - '0', what);
  if (p == "C.1.2") return c12(w, what);
  if (p == "C.1'") return c1p(w, what);
  if (p == "C.1''") return c1pp(w, what);
  if (p == "C.1''''") return c1pppp(w, what);
  if (p == "C.2.1") return c21(w, what);
  if (p == "C.2.2") return c22(w, what);
  throw std::logic_error("case_program: unknown program " + p);
}

}  // namespace lazycops
