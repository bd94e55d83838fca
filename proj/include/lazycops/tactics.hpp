#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazycops/arena.hpp"
#include "lazycops/engine.hpp"
#include "lazycops/program.hpp"

namespace lazycops {

using Path = std::vector<Vertex>;

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Certificates

// True iff every cop is strictly farther from the end of `path` than the
// path is long. Such a path can be walked without capture.
inline bool safe_reach_check(Arena& A, const Path& path, const std::vector<Vertex>& cops) {
  if (path.empty()) throw std::invalid_argument("safe_reach_check: empty path");
  const auto& g = A.graph();
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i] != path[i - 1] && !g.has_edge(path[i - 1], path[i]))
      throw std::invalid_argument("safe_reach_check: malformed path");
  const int n = static_cast<int>(path.size()) - 1;
  auto f = A.to(path.back());
  for (Vertex c : cops)
    if (f[c] <= n) return false;
  return true;
}

// Robber at centre o can run to centre o2: d(o,o2) < d(cop,o2) for all cops.
inline bool reach_centre_check(Arena& A, Vertex o, Vertex o2, const std::vector<Vertex>& cops) {
  auto f = A.to(o2);
  const int d = f[o];
  for (Vertex c : cops)
    if (f[c] <= d) return false;
  return true;
}

// Shortest path from a to b, stepping to the lowest-id neighbour that gets
// closer.
inline Path shortest_path(Arena& A, Vertex a, Vertex b) {
  auto f = A.to(b);
  Path p{a};
  while (p.back() != b) {
    Vertex cur = p.back(), next = kNoVertex;
    for (Vertex w : A.graph().neighbors(cur))
      if (f[w] + 1 == f[cur] && (next == kNoVertex || w < next)) next = w;
    p.push_back(next);
  }
  return p;
}

inline Path concat(Path a, const Path& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.back() != b.front()) throw std::logic_error("concat: paths do not meet");
  a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

inline Path reversed(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

inline int length(const Path& p) { return static_cast<int>(p.size()) - 1; }

// ---------------------------------------------------------------------------
// Algorithm 1

// Incremental form of the loop that picks the layer r for the inward legs.
class RSchedule {
 public:
  RSchedule(int k, int l2) : k_(k), l2_(l2) {
    if (k - l2 + 4 > 49) throw PreconditionError("compute_r: r1 = k - l2 + 4 exceeds 49");
    if (k < 0 || l2 < 0 || k > 98) throw PreconditionError("compute_r: k must lie in [0, 98]");
    legs_ = std::max(0, k - l2 + 1);
  }

  int legs() const { return legs_; }
  int leg() const { return i_; }
  bool finished() const { return stopped_ || i_ >= legs_; }
  // Layer of the next waypoint w_{i+1}.
  int next_layer() const { return k_ - l2_ + 5 - (i_ + 1); }
  int r() const { return r_; }
  int j() const { return j_; }
  bool broke() const { return stopped_; }

  // Reports j_i after reaching w_i. Returns true when the loop breaks.
  bool record(int j) {
    if (finished()) throw std::logic_error("compute_r: loop already finished");
    if (j < j_) throw std::invalid_argument("compute_r: skip counts must not decrease");
    ++i_;
    r_ = k_ - l2_ + 5 - i_;
    j_ = j;
    if (j == i_ - 1) stopped_ = true;
    return stopped_;
  }

  // After the loop: head straight for the centre of the target face?
  bool to_centre() const { return j_ > k_ - l2_; }

 private:
  int k_, l2_;
  int legs_ = 0, i_ = 0;
  int r_ = 49, j_ = 0;
  bool stopped_ = false;
};

struct RResult {
  int r = 49;
  int legs = 0;
  bool broke = false;
  bool to_centre = true;
  int j = 0;
};

// skips(i) returns j_i, the turns the tracked cop has skipped by the time the
// robber reaches w_i.
inline RResult compute_r(int k, int l2, const std::function<int(int)>& skips) {
  RSchedule s(k, l2);
  while (!s.finished()) s.record(skips(s.leg() + 1));
  RResult out{s.r(), s.leg(), s.broke(), s.to_centre(), s.j()};
  if (out.r < 4 || out.r > 49) throw std::logic_error("compute_r: r out of range");
  return out;
}

// ---------------------------------------------------------------------------
// Logging and bookkeeping

struct LogEvent {
  int round = 0;
  std::string event;  // dispatch, refine, tactic, arrive, retreat, divergence, fallback
  std::string label;
  std::string tactic;
  std::map<std::string, long> cert;
  std::string note;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["round"] = round;
    j["event"] = event;
    j["label"] = label;
    j["tactic"] = tactic;
    j["certificates"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cert) j["certificates"][k] = v;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

struct StrategyState {
  std::string phase = "place";  // place, wait, case, fallback
  int home_face = -1;
  std::string tactic;
  std::string label;
  long k = 0, l2 = 0, l3 = 0;
  std::vector<int> j;
  long oscillations = 0;
  int centres_reached = 0;
};

// Everything a running program can observe. Cop indices are the engine's.
class Ctx {
 public:
  explicit Ctx(Arena& a) : A(a) {}

  Arena& A;
  std::vector<Vertex> cops;
  Vertex robber = kNoVertex;
  int round = 0;
  long cop_turns = 0;
  std::array<long, 3> moved{};
  StrategyState state;
  std::vector<LogEvent> log;
  std::map<std::string, long> certificate_checks;  // passes and failures by name
  bool in_corner_loop = false;
  // The end of the last certified path and the steps left on it. While it
  // is active every cop must stay farther from `end` than `remaining`.
  Vertex guarantee_end = kNoVertex;
  int guarantee_left = 0;
  long guarantee_checks = 0, guarantee_violations = 0;

  void guarantee(Vertex end, int len) {
    guarantee_end = end;
    guarantee_left = len;
  }
  void drop_guarantee() { guarantee_end = kNoVertex; }
  // Called after the robber commits to a move.
  void robber_stepped() {
    if (guarantee_end == kNoVertex) return;
    if (--guarantee_left <= 0) drop_guarantee();
  }
  // Called once the cops have replied.
  void check_guarantee() {
    if (guarantee_end == kNoVertex) return;
    ++guarantee_checks;
    auto f = A.to(guarantee_end);
    for (Vertex c : cops)
      if (f[c] <= guarantee_left) {
        ++guarantee_violations;
        drop_guarantee();
        return;
      }
  }

  // Folds in the cops' latest reply.
  void observe(const GameConfig& c) {
    if (!cops.empty() && c.cops.size() == cops.size()) {
      ++cop_turns;
      for (std::size_t i = 0; i < cops.size() && i < 3; ++i)
        if (c.cops[i] != cops[i]) ++moved[i];
    }
    cops = c.cops;
    robber = c.robber;
    round = c.round;
  }

  void event(std::string kind, std::string tactic, std::map<std::string, long> cert = {},
             std::string note = {}) {
    log.push_back({round, std::move(kind), state.label, std::move(tactic), std::move(cert),
                   std::move(note)});
  }
  long divergences() const {
    long n = 0;
    for (const auto& e : log) n += e.event == "divergence";
    return n;
  }
};

// A program's coordinate frame: canonical = perm[frame][actual], plus which
// engine cop plays the role of lambda_1..lambda_3.
struct View {
  Ctx* c = nullptr;
  int frame = 0;
  int inv = 0;
  std::array<int, 3> role{0, 1, 2};

  View() = default;
  View(Ctx& ctx, int f, std::array<int, 3> r = {0, 1, 2})
      : c(&ctx), frame(f), inv(dodeca::inverse(f)), role(r) {}

  Arena& A() const { return c->A; }
  Vertex canon(Vertex x) const { return c->A.sym().map(frame, x); }
  Vertex actual(Vertex y) const { return c->A.sym().map(inv, y); }
  Vertex me() const { return canon(c->robber); }
  // j = 1..3
  Vertex cop(int j) const { return canon(c->cops[role[j - 1]]); }
  std::vector<Vertex> cops() const { return {cop(1), cop(2), cop(3)}; }
  long moves(int j) const { return c->moved[role[j - 1]]; }
  long turns() const { return c->cop_turns; }
  long skips(int j) const { return turns() - moves(j); }

  int d(Vertex a, Vertex b) const { return c->A.dist(a, b); }
  int dF(Vertex a, int f) const { return c->A.to_face(a, f); }
  int dB(Vertex a, int i) const { return c->A.to_side(a, i); }
  bool in(Vertex a, int f) const { return c->A.in_face(a, f); }

  // Same position seen after applying symmetry tau on top of this frame.
  View then(int tau) const { return View(*c, dodeca::compose(tau, frame), role); }
  View swapped23() const { return View(*c, frame, {role[0], role[2], role[1]}); }
  View with_roles(std::array<int, 3> r) const { return View(*c, frame, r); }
};

// Lemma-2 certificate from the current position, in canonical coordinates.
inline bool certified(const View& v, const Path& p, const std::string& name = {}) {
  bool ok = p.size() >= 1 && p.front() == v.me() && safe_reach_check(v.A(), p, v.cops());
  if (!name.empty()) ++v.c->certificate_checks[name + (ok ? ":pass" : ":fail")];
  if (ok) v.c->guarantee(v.actual(p.back()), length(p));
  return ok;
}

inline bool guard_ok(const View& v, Vertex x) {
  const auto& g = v.A().graph();
  for (Vertex c : v.cops())
    if (g.adjacent_or_equal(c, x)) return false;
  return true;
}

enum class Cert { Strict, AfterFirst, Prefix, Guarded };

// Walks `p` (canonical) one edge per round. Strict: the whole path is
// certified before the first step. AfterFirst: certified after the first
// step. Prefix: the caller has certified a longer path this one starts.
// Guarded: uncertified; each step only needs no cop on or next to it, and the
// walk switches to Prefix as soon as the rest of the path certifies.
// `on_turn` runs after every cop reply.
inline Program walk(View v, Path p, Cert cert, std::string what,
                    std::function<void()> on_turn = {}) {
  if (p.empty() || p.front() != v.me())
    throw std::logic_error(what + ": path does not start at the robber");
  if (cert == Cert::Strict && !certified(v, p, what))
    co_return Outcome::blocked(what + ": certificate");
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (i == 2 && cert == Cert::AfterFirst) {
      Path rest(p.begin() + 1, p.end());
      if (!certified(v, rest, what)) co_return Outcome::blocked(what + ": certificate");
    }
    if (cert == Cert::Guarded) {
      Path rest(p.begin() + static_cast<long>(i) - 1, p.end());
      if (safe_reach_check(v.A(), rest, v.cops()) && certified(v, rest, what)) cert = Cert::Prefix;
    }
    if (!guard_ok(v, p[i])) co_return Outcome::blocked(what + ": guard");
    co_yield v.actual(p[i]);
    if (on_turn) on_turn();
  }
  co_return Outcome::done();
}

// A path from the robber to p.back() of the same length whose first step is
// guard-safe, or p itself when none is.
inline Path guarded_start(const View& v, const Path& p) {
  if (p.size() < 2 || guard_ok(v, p[1])) return p;
  Arena& A = v.A();
  auto f = A.to(p.back());
  for (Vertex x : A.graph().neighbors(v.me()))
    if (f[x] + 1 == f[v.me()] && guard_ok(v, x)) return concat(Path{v.me(), x}, shortest_path(A, x, p.back()));
  return p;
}

// Leaves the centre along p. If the cop next to o backs off during the first
// round, returns to o instead. When the rest of p does not certify and o is
// not safe to return to, the walk goes on guarded: the case arguments bound
// what the cops can do together, which a per-cop certificate cannot see.
inline Program depart(View v, Path p, std::string what, std::function<void()> on_turn = {}) {
  const Vertex o = v.me();
  if (p.size() < 2) co_return Outcome::done();
  p = guarded_start(v, p);
  if (!guard_ok(v, p[1])) co_return Outcome::blocked(what + ": guard");
  v.c->drop_guarantee();
  co_yield v.actual(p[1]);
  if (on_turn) on_turn();
  Path rest(p.begin() + 1, p.end());
  if (!certified(v, rest, what)) {
    bool retreat = guard_ok(v, o);
    for (Vertex c : v.cops()) retreat = retreat && v.d(c, o) >= 2;
    if (retreat) {
      v.c->event("retreat", what, {{"d_lambda1_o", v.d(v.cop(1), o)}});
      v.c->drop_guarantee();
      co_yield v.actual(o);
      co_return Outcome::retreat();
    }
    v.c->event("guarded", what, {{"remaining", length(rest)}});
    co_return co_await walk(v, rest, Cert::Guarded, what, on_turn);
  }
  co_return co_await walk(v, rest, Cert::Prefix, what, on_turn);
}

// Runs to the first certified centre among `faces`.
inline Program go_centre(View v, std::vector<int> faces, std::string what) {
  for (int f : faces) {
    Path p = shortest_path(v.A(), v.me(), v.A().o(f));
    if (certified(v, p, what)) {
      Outcome r = co_await walk(v, p, Cert::Prefix, what);
      if (r.kind == Outcome::Done) co_return Outcome::centre(f);
      co_return r;
    }
  }
  co_return Outcome::blocked(what + ": no certified centre");
}

// Face ids in canonical coordinates with a certified shortest run from here.
inline std::vector<int> certified_centres(const View& v, const std::vector<int>& faces) {
  std::vector<int> out;
  for (int f : faces) {
    auto field = v.A().to(v.A().o(f));
    int len = field[v.me()];
    bool ok = true;
    for (Vertex c : v.cops()) ok = ok && field[c] > len;
    if (ok) out.push_back(f);
  }
  return out;
}

inline std::vector<int> all_faces() {
  std::vector<int> f(dodeca::kFaces);
  for (int i = 0; i < dodeca::kFaces; ++i) f[i] = i;
  return f;
}

// ---------------------------------------------------------------------------
// Corner tactics

struct Tactic {
  enum Kind { FollowWaypoints, Oscillate, ThreeFace, CenterApproach, GuardedBranch };
  Kind kind = CenterApproach;
  Vertex corner = kNoVertex;
  std::vector<int> faces;
  int threat = -1;  // engine cop index for Oscillate
  int target_face = -1;
  bool certified = false;
  std::vector<Vertex> waypoints;

  std::string name() const {
    switch (kind) {
      case FollowWaypoints: return "follow-waypoints";
      case Oscillate: return "oscillate";
      case ThreeFace: return "three-face";
      case CenterApproach: return "center-approach";
      case GuardedBranch: return "guarded-branch";
    }
    return "?";
  }
};

inline int corner_of(Vertex x) {
  return x < static_cast<Vertex>(dodeca::kCorners) ? static_cast<int>(x) : -1;
}

// The pair rule for two faces: some cop at distance >= 2 from the corner and
// the other two at distance >= 2 from the union. Returns that cop or -1.
inline int pair_rule(Arena& A, Vertex v, int fa, int fb, const std::vector<Vertex>& cops) {
  for (int t = 0; t < static_cast<int>(cops.size()); ++t) {
    if (A.dist(cops[t], v) < 2) continue;
    bool ok = true;
    for (int o = 0; o < static_cast<int>(cops.size()); ++o)
      if (o != t) ok = ok && A.to_faces(cops[o], {fa, fb}) >= 2;
    if (ok) return t;
  }
  return -1;
}

inline bool three_face_rule(Arena& A, Vertex v, const std::vector<int>& F,
                            const std::vector<Vertex>& cops) {
  auto dU = [&](Vertex c) { return A.to_faces(c, {F[0], F[1], F[2]}); };
  for (std::size_t out = 0; out < cops.size(); ++out) {
    if (dU(cops[out]) < 2) continue;
    bool ok = true;
    for (std::size_t i = 0; i < cops.size(); ++i)
      if (i != out) ok = ok && A.dist(cops[i], v) >= 2;
    if (ok) return true;
  }
  return false;
}

// Dispatch at a dodecahedron corner. Cops and corner in any one frame.
inline Tactic strategy_at_corner(Arena& A, Vertex v, const std::vector<Vertex>& cops) {
  int c = corner_of(v);
  if (c < 0) throw std::invalid_argument("strategy_at_corner: robber is not at a corner");
  auto F = dodeca::faces_of_corner(c);
  Tactic t;
  t.corner = v;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      int who = pair_rule(A, v, F[i], F[j], cops);
      if (who >= 0) {
        t.kind = Tactic::Oscillate;
        t.faces = {F[i], F[j]};
        t.threat = who;
        return t;
      }
    }
  if (three_face_rule(A, v, F, cops)) {
    t.kind = Tactic::ThreeFace;
    t.faces = F;
    return t;
  }
  t.kind = Tactic::CenterApproach;
  // Nearest certified centre, else the centre whose nearest cop is farthest.
  int best = -1, best_len = 1 << 20, best_margin = -(1 << 20);
  for (int f = 0; f < dodeca::kFaces; ++f) {
    auto field = A.to(A.o(f));
    int len = field[v], margin = 1 << 20;
    for (Vertex cp : cops) margin = std::min(margin, field[cp] - len);
    bool ok = margin > 0;
    if (ok && (!t.certified || len < best_len)) {
      t.certified = true;
      best = f;
      best_len = len;
    } else if (!t.certified && margin > best_margin) {
      best = f;
      best_margin = margin;
    }
  }
  t.target_face = best;
  t.faces = {best};
  return t;
}

// The neighbour of the corner one step toward the centre of f.
inline Vertex probe_step(Arena& A, Vertex corner, int f) {
  auto field = A.to(A.o(f));
  Vertex best = kNoVertex;
  for (Vertex w : A.graph().neighbors(corner))
    if (field[w] + 1 == field[corner] && A.in_face(w, f) && (best == kNoVertex || w < best))
      best = w;
  return best;
}

// Face sets of the three-face scenarios: which of F a cop lies in.
inline int membership(Arena& A, Vertex c, const std::vector<int>& F) {
  int m = 0;
  for (std::size_t i = 0; i < F.size(); ++i)
    if (A.in_face(c, F[i])) m |= 1 << i;
  return m;
}

// Probe order for a corner tactic, best first.
inline std::vector<int> probe_order(Arena& A, const Tactic& t, const std::vector<Vertex>& cops) {
  std::vector<int> order;
  auto add = [&](int f) {
    if (std::find(order.begin(), order.end(), f) == order.end()) order.push_back(f);
  };
  auto far_first = [&](std::vector<int> fs) {
    std::stable_sort(fs.begin(), fs.end(), [&](int a, int b) {
      auto fa = A.to(A.o(a)), fb = A.to(A.o(b));
      int ma = 1 << 20, mb = 1 << 20;
      for (Vertex c : cops) {
        ma = std::min(ma, fa[c]);
        mb = std::min(mb, fb[c]);
      }
      return ma > mb;
    });
    return fs;
  };
  if (t.kind == Tactic::Oscillate) {
    Vertex w = cops[t.threat];
    int fa = t.faces[0], fb = t.faces[1];
    bool ia = A.in_face(w, fa), ib = A.in_face(w, fb);
    if (ia && !ib) add(fb);
    if (ib && !ia) add(fa);
    for (int f : far_first(t.faces)) add(f);
    return order;
  }
  if (t.kind == Tactic::ThreeFace) {
    const auto& F = t.faces;
    std::vector<int> single, pair;
    std::vector<int> ms;
    for (Vertex c : cops) {
      int m = membership(A, c, F);
      int bits = __builtin_popcount(static_cast<unsigned>(m));
      if (bits == 1) single.push_back(m);
      if (bits == 2) pair.push_back(m);
    }
    auto faces_of = [&](int m) {
      std::vector<int> out;
      for (int i = 0; i < 3; ++i)
        if (m & (1 << i)) out.push_back(F[i]);
      return out;
    };
    if (single.size() == 2 && single[0] != single[1]) {
      // Scenario (3): the face holding neither cop.
      add(F[__builtin_ctz(static_cast<unsigned>(7 & ~(single[0] | single[1])))]);
    } else if (single.size() == 1 && pair.size() == 1) {
      // Scenario (1): toward a face of the pair region.
      for (int f : far_first(faces_of(pair[0]))) add(f);
    } else if (pair.size() == 2 && pair[0] != pair[1]) {
      // Scenario (2): the face holding the first pair cop but not the second.
      int only = pair[0] & ~pair[1];
      if (only) add(F[__builtin_ctz(static_cast<unsigned>(only))]);
    }
    for (int f : far_first(F)) add(f);
    return order;
  }
  for (int f : t.faces) add(f);
  return order;
}

// Play at a corner until a centre is reached: Lemma 6 and Lemma 7 as a
// probe-and-retreat loop, re-dispatching after every retreat.
inline Program corner_play(View v, std::string what) {
  Arena& A = v.A();
  const Vertex corner = v.me();
  if (corner_of(corner) < 0) throw std::logic_error(what + ": not at a corner");
  auto faces = dodeca::faces_of_corner(static_cast<int>(corner));
  for (long iter = 0;; ++iter) {
    auto ok = certified_centres(v, faces);
    if (!ok.empty()) {
      v.c->in_corner_loop = false;
      co_return co_await go_centre(v, ok, what + "/centre");
    }
    Tactic t = strategy_at_corner(A, corner, v.cops());
    if (iter == 0) v.c->event("tactic", t.name(), {{"corner", static_cast<long>(corner)}}, what);
    if (t.kind == Tactic::CenterApproach) {
      v.c->in_corner_loop = false;
      if (t.certified) co_return co_await go_centre(v, t.faces, what + "/centre");
      co_return Outcome::blocked(what + ": no corner tactic applies");
    }
    v.c->in_corner_loop = true;
    bool probed = false;
    for (int f : probe_order(A, t, v.cops())) {
      Vertex p1 = probe_step(A, corner, f);
      if (p1 == kNoVertex || !guard_ok(v, p1)) continue;
      probed = true;
      v.c->drop_guarantee();
      co_yield v.actual(p1);
      Path rest = shortest_path(A, p1, A.o(f));
      if (certified(v, rest, what + "/probe")) {
        v.c->in_corner_loop = false;
        Outcome r = co_await walk(v, rest, Cert::Prefix, what + "/probe");
        if (r.kind == Outcome::Done) co_return Outcome::centre(f);
        co_return r;
      }
      // Another centre may have opened up from the probe vertex.
      for (int g : faces) {
        Path alt = shortest_path(A, p1, A.o(g));
        if (g != f && certified(v, alt)) {
          v.c->in_corner_loop = false;
          Outcome r = co_await walk(v, alt, Cert::Prefix, what + "/probe");
          if (r.kind == Outcome::Done) co_return Outcome::centre(g);
          co_return r;
        }
      }
      if (!guard_ok(v, corner)) co_return Outcome::blocked(what + ": retreat square guarded");
      v.c->drop_guarantee();
      co_yield v.actual(corner);
      ++v.c->state.oscillations;
      break;
    }
    if (!probed) co_return Outcome::blocked(what + ": every probe step guarded");
  }
}

// ---------------------------------------------------------------------------
// Lemma 5: three cops in U, escape via a middle vertex of a side.

struct CentreEscapeCheck {
  bool ok = true;
  std::string why;
  std::map<std::string, long> cert;
};

// Preconditions with canonical roles; target is ring position 49, 50 or 51
// on side 0 of U (the side B7), 50 being its middle m2.
inline CentreEscapeCheck centre_escape_preconditions(const View& v, int target_pos) {
  Arena& A = v.A();
  CentreEscapeCheck out;
  const int L = A.layers();
  Vertex T = A.geo().ring(0, L, target_pos);
  const bool mid = target_pos == L + 1;
  const int need = mid ? 104 : 110;
  std::array<int, 3> dB{};
  for (int j = 1; j <= 3; ++j) dB[j - 1] = v.dB(v.cop(j), 7);
  auto fail = [&](std::string w) {
    if (out.ok) out.why = std::move(w);
    out.ok = false;
  };
  out.cert["d_u1_o"] = v.d(v.cop(1), A.o());
  out.cert["d_u1_T"] = v.d(v.cop(1), T);
  out.cert["d_u2_T"] = v.d(v.cop(2), T);
  out.cert["d_u3_T"] = v.d(v.cop(3), T);
  out.cert["B7_sum_12"] = dB[0] + dB[1];
  out.cert["B7_sum_13"] = dB[0] + dB[2];
  out.cert["B7_sum_23"] = dB[1] + dB[2];
  if (out.cert["d_u1_o"] != 1) fail("d(u1,o) != 1");
  if (out.cert["d_u2_T"] < 99 || out.cert["d_u3_T"] < 99) fail("d(u2|u3,target) < 99");
  if (out.cert["d_u1_T"] < 98) fail("d(u1,target) < 98");
  if (v.d(v.cop(2), A.o()) < 2 || v.d(v.cop(3), A.o()) < 2) fail("d(u2|u3,o) < 2");
  for (auto key : {"B7_sum_12", "B7_sum_13", "B7_sum_23"})
    if (out.cert[key] < need) fail(std::string(key) + " < " + std::to_string(need));
  return out;
}

struct EscapeTrack {
  std::array<long, 3> arrive{-1, -1, -1};
  std::array<Vertex, 3> entry{kNoVertex, kNoVertex, kNoVertex};
  long start_turns = 0;
};

// Outward radial path in face f from the layer-n vertex at pos to the outer
// vertex it projects from (corners and middles only).
inline Path radial_out(const LayeredDodecahedron& g, int f, int n, int pos_outer) {
  return reversed(g.radial_between(f, g.layers(), pos_outer, n));
}

// Path from o out to the target on B7, then the Lemma 5 case split.
inline Program centre_escape(View v, int target_pos, std::string label) {
  Arena& A = v.A();
  const auto& G = A.geo();
  const int L = A.layers();
  const int S = G.side_length(L);
  Ctx& c = *v.c;
  c.state.tactic = "center-escape";

  std::array<long, 3> ell{};
  for (int j = 1; j <= 3; ++j) ell[j - 1] = v.dB(v.cop(j), 7);
  EscapeTrack tr;
  tr.start_turns = v.turns();
  std::array<long, 3> moves0{v.moves(1), v.moves(2), v.moves(3)};
  for (int j = 0; j < 3; ++j)
    if (A.in_face(v.cop(j + 1), 2)) {
      tr.arrive[j] = 0;
      tr.entry[j] = v.cop(j + 1);
    }
  auto watch = [&v, &tr, &A] {
    for (int j = 0; j < 3; ++j)
      if (tr.arrive[j] < 0 && A.in_face(v.cop(j + 1), 2)) {
        tr.arrive[j] = v.turns() - tr.start_turns;
        tr.entry[j] = v.cop(j + 1);
      }
  };

  const Vertex T = G.ring(0, L, target_pos);
  Path out = G.spoke(0, T);
  Outcome r = co_await depart(v, out, label + "/o->m2", watch);
  if (r.kind != Outcome::Done) co_return r;

  // Case (a): no cop in U2.
  bool any = false;
  for (int j = 1; j <= 3; ++j) any = any || A.in_face(v.cop(j), 2);
  if (!any) {
    c.event("refine", "center-escape", {}, "case (a)");
    Path in = shortest_path(A, v.me(), A.o(2));
    r = co_await walk(v, in, Cert::Strict, label + "/a");
    if (r.kind == Outcome::Done) co_return Outcome::centre(2);
    co_return r;
  }

  int alpha = -1;
  for (int j = 0; j < 3; ++j)
    if (tr.arrive[j] >= 0 && (alpha < 0 || tr.arrive[j] < tr.arrive[alpha])) alpha = j;
  if (alpha < 0) {
    for (int j = 0; j < 3; ++j)
      if (A.in_face(v.cop(j + 1), 2)) alpha = j;
    tr.entry[alpha] = v.cop(alpha + 1);
  }
  const long k = v.moves(alpha + 1) - moves0[alpha];
  const long la = ell[alpha];
  Vertex s = tr.entry[alpha];
  c.state.k = k;
  c.state.l2 = la;
  // Orient so that s is nearer B2 than B1.
  if (v.dB(s, 1) < v.dB(s, 2)) {
    int R = A.reflect_through(4);
    s = A.sym().map(R, s);
    v = v.then(R);
  }
  // Cop roles: alpha becomes lambda_2 in the paper's wording.
  std::array<int, 3> others{};
  {
    int n = 0;
    for (int j = 0; j < 3; ++j)
      if (j != alpha) others[n++] = j;
  }
  std::map<std::string, long> cert{{"k", k}, {"l_alpha", la}, {"alpha", alpha + 1}};

  if (k >= la + 46) {
    c.event("refine", "center-escape", cert, "case (b.1)");
    // m2 -> v1 -> m along B7 then B1.
    const Vertex here = v.me();
    const int pos = G.address_in(here, 0).pos;
    Path leg = G.ring_walk(0, L, pos, 0, -1);
    const auto& B1 = A.landmarks().side(1);
    Path toward_m(B1.begin(), B1.begin() + L + 2);
    leg = concat(leg, toward_m);
    r = co_await walk(v, leg, Cert::Strict, label + "/b1:m2->m");
    if (r.kind != Outcome::Done) co_return r;
    const long alpha_moves_99_198 = v.moves(alpha + 1) - moves0[alpha] - k;
    c.event("refine", "center-escape", {{"alpha_moves", alpha_moves_99_198}}, "b.1 at m");
    const Vertex m = v.me();
    if (alpha_moves_99_198 <= 96) {
      Path run = concat(Path(B1.begin() + L + 1, B1.end()), reversed(G.spoke(6, A.q(1))));
      r = co_await walk(v, run, Cert::Strict, label + "/b1:m->q1->o6");
      if (r.kind == Outcome::Done) co_return Outcome::centre(6);
      if (r.kind != Outcome::Blocked || v.me() != m) co_return r;
      co_return co_await go_centre(v, {1, 2}, label + "/b1:alt");
    }
    // Inward in U1 to layer rr, then o1 or the roundabout to s1.
    const int rr = 20;
    const int mpos = G.address_in(m, 1).pos;
    Path in = G.radial_between(1, L, mpos, rr);
    Vertex w = A.s(1);
    // The cop other than alpha nearest to w.
    int watcher = others[0];
    if (v.d(v.cop(others[1] + 1), w) < v.d(v.cop(others[0] + 1), w)) watcher = others[1];
    const long skips0 = v.skips(watcher + 1);
    Path to_o1 = concat(in, G.radial_in(1, rr, G.address_in(in.back(), 1).pos));
    if (!certified(v, to_o1, label + "/b1:m->o1")) {
      // The roundabout must hold from m already.
      const int Sr = G.side_length(rr);
      const int ppos = G.address_in(in.back(), 1).pos;
      Path ring1 = G.ring_walk(1, rr, ppos, 4 * Sr, -1);
      Path ring2 = G.ring_walk(1, rr, 4 * Sr, 3 * Sr, -1);
      Path outw = radial_out(G, 1, rr, 3 * S);
      Path whole = concat(concat(concat(in, ring1), ring2), outw);
      r = co_await walk(v, whole, Cert::Strict, label + "/b1:roundabout");
      if (r.kind != Outcome::Done) co_return r;
      co_return co_await go_centre(v, {10, 1, 6}, label + "/b1:w->o10");
    }
    r = co_await walk(v, in, Cert::Prefix, label + "/b1:m->p");
    if (r.kind != Outcome::Done) co_return r;
    const long sk = v.skips(watcher + 1) - skips0;
    c.event("refine", "center-escape", {{"watcher_skips", sk}, {"r", rr}}, "b.1 at p");
    const int ppos = G.address_in(v.me(), 1).pos;
    Path rest_o1 = G.radial_in(1, rr, ppos);
    if (sk >= 7 && certified(v, rest_o1, label + "/b1:p->o1")) {
      r = co_await walk(v, rest_o1, Cert::Prefix, label + "/b1:p->o1");
      if (r.kind == Outcome::Done) co_return Outcome::centre(1);
      co_return r;
    }
    const int Sr = G.side_length(rr);
    Path route = concat(concat(G.ring_walk(1, rr, ppos, 4 * Sr, -1),
                               G.ring_walk(1, rr, 4 * Sr, 3 * Sr, -1)),
                        radial_out(G, 1, rr, 3 * S));
    if (!certified(v, route, label + "/b1:p->w")) {
      if (certified(v, rest_o1)) {
        r = co_await walk(v, rest_o1, Cert::Prefix, label + "/b1:p->o1");
        if (r.kind == Outcome::Done) co_return Outcome::centre(1);
        co_return r;
      }
      co_return Outcome::blocked(label + "/b1: neither o1 nor roundabout certified");
    }
    r = co_await walk(v, route, Cert::Prefix, label + "/b1:p->w");
    if (r.kind != Outcome::Done) co_return r;
    co_return co_await go_centre(v, {10, 1, 6}, label + "/b1:w->o10");
  }

  // Case (b.2): Algorithm 1 legs toward o2.
  c.event("refine", "center-escape", cert, "case (b.2)");
  const Vertex w0 = v.me();
  const int pos49 = G.address_in(w0, 2).pos;
  const long turns0 = v.turns(), amoves0 = v.moves(alpha + 1);
  int layer = L, pos = pos49;
  bool centre = true;
  int rfinal = L;
  if (k - la + 4 > 49) {
    c.event("divergence", "center-escape", cert, "b.2 with r1 > 49");
  } else if (k >= la) {
    RSchedule sched(static_cast<int>(k), static_cast<int>(la));
    while (!sched.finished()) {
      const int next = sched.next_layer();
      Path leg = G.radial_between(2, layer, pos, next);
      Path to_o2 = concat(G.radial_between(2, layer, pos, 1),
                          G.radial_in(2, 1, G.project(layer, pos, 1)));
      if (!certified(v, to_o2) && !certified(v, leg, label + "/b2:leg"))
        co_return Outcome::blocked(label + "/b2: leg not certified");
      r = co_await walk(v, leg, Cert::Prefix, label + "/b2:leg");
      if (r.kind != Outcome::Done) co_return r;
      pos = G.project(layer, pos, next);
      layer = next;
      const long j = (v.turns() - turns0) - (v.moves(alpha + 1) - amoves0);
      c.state.j.push_back(static_cast<int>(j));
      sched.record(static_cast<int>(j));
    }
    centre = sched.to_centre();
    rfinal = sched.r();
    c.event("refine", "compute_r",
            {{"r", rfinal}, {"legs", sched.leg()}, {"j", sched.j()}, {"broke", sched.broke()}},
            centre ? "to o2" : "route to q1");
  }
  if (centre) {
    Path in = layer == L ? shortest_path(A, v.me(), A.o(2)) : G.radial_in(2, layer, pos);
    r = co_await walk(v, in, Cert::Strict, label + "/b2:->o2");
    if (r.kind == Outcome::Done) co_return Outcome::centre(2);
    co_return r;
  }
  const int Sr = G.side_length(layer);
  Path route = concat(concat(G.ring_walk(2, layer, pos, Sr, +1),
                             G.ring_walk(2, layer, Sr, 2 * Sr, +1)),
                      radial_out(G, 2, layer, 2 * S));
  if (!certified(v, route, label + "/b2:p'->q1")) {
    Path in = G.radial_in(2, layer, pos);
    if (certified(v, in)) {
      r = co_await walk(v, in, Cert::Prefix, label + "/b2:->o2");
      if (r.kind == Outcome::Done) co_return Outcome::centre(2);
      co_return r;
    }
    co_return Outcome::blocked(label + "/b2: route to q1 not certified");
  }
  r = co_await walk(v, route, Cert::Prefix, label + "/b2:p'->q1");
  if (r.kind != Outcome::Done) co_return r;
  co_return co_await go_centre(v, {6, 1, 2}, label + "/b2:q1->o6");
}

// Tactic form of the above with its preconditions enforced.
inline Program tactic_center_escape(View v, int target_pos, std::string label) {
  auto chk = centre_escape_preconditions(v, target_pos);
  if (!chk.ok) throw PreconditionError("center escape: " + chk.why);
  return centre_escape(v, target_pos, std::move(label));
}

}  // namespace lazycops
