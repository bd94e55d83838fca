#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazycops/cases.hpp"

namespace lazycops {

struct PaperRobberOptions {
  // Corner probe-retreat cycles before oscillating() reports true.
  long oscillation_after = 2;
  // Check for an adjacent centre with every cop beyond 196 before dispatching.
  bool far_centre_check = true;
};

// The robber strategy for three lazy cops on the 49-layer dodecahedron: wait
// at a centre; when exactly one cop becomes adjacent, classify the position
// and run the matching case program, which ends at another centre. Anything
// the programs cannot handle goes to a certified run to some centre or, failing
// that, a single step that keeps the nearest cop as far away as possible.
class PaperRobber : public RobberStrategy {
 public:
  explicit PaperRobber(Arena& arena, PaperRobberOptions opt = {}) : ctx_(arena), opt_(opt) {
    if (arena.layers() != Arena::kLayers)
      throw std::invalid_argument("paper robber: needs the 49-layer dodecahedron");
  }

  Vertex place(const GameConfig& c, const RuleSet& rules) override {
    check_rules(c, rules);
    Arena& A = ctx_.A;
    Vertex best = A.o(0);
    int best_d = -1;
    for (int f = 0; f < dodeca::kFaces; ++f) {
      int d = 1 << 20;
      auto field = A.to(A.o(f));
      for (Vertex cp : c.cops) d = std::min(d, field[cp]);
      if (d > best_d) {
        best = A.o(f);
        best_d = d;
      }
    }
    ctx_.state.phase = "wait";
    ctx_.state.home_face = cases::home_face(A, best);
    ctx_.robber = best;
    ctx_.event("place", "max-min centre", {{"face", ctx_.state.home_face}, {"min_cop_distance", best_d}});
    return best;
  }

  Vertex move(const GameConfig& c, const RuleSet& rules) override {
    if (c.graph->num_vertices() != ctx_.A.graph().num_vertices())
      throw GameError("paper robber: game graph is not the arena graph");
    (void)rules;
    ctx_.observe(c);
    ctx_.check_guarantee();
    Vertex next = decide();
    ctx_.robber_stepped();
    if (next != ctx_.robber) ++steps_;
    return next;
  }

  bool oscillating() const override {
    return ctx_.in_corner_loop && ctx_.state.oscillations >= opt_.oscillation_after;
  }

  const Ctx& context() const { return ctx_; }
  const std::map<std::string, long>& coverage() const { return coverage_; }
  long divergences() const { return ctx_.divergences(); }
  long guarantee_violations() const { return ctx_.guarantee_violations; }
  long fallbacks() const { return fallbacks_; }

  nlohmann::ordered_json log_json() const {
    nlohmann::ordered_json j;
    j["events"] = nlohmann::ordered_json::array();
    for (const auto& e : ctx_.log) j["events"].push_back(e.to_json());
    j["coverage"] = coverage_;
    j["divergences"] = ctx_.divergences();
    j["fallbacks"] = fallbacks_;
    j["guarantee_checks"] = ctx_.guarantee_checks;
    j["guarantee_violations"] = ctx_.guarantee_violations;
    j["certificates"] = ctx_.certificate_checks;
    j["centres_reached"] = ctx_.state.centres_reached;
    j["oscillations"] = ctx_.state.oscillations;
    return j;
  }

 private:
  static void check_rules(const GameConfig& c, const RuleSet& rules) {
    if (rules.variant != Variant::OneCopMoves)
      throw GameError("paper robber: needs the one-cop-moves variant");
    if (rules.k != 3 || c.cops.size() != 3) throw GameError("paper robber: needs three cops");
  }

  bool safe_step(Vertex x) const {
    const auto& g = ctx_.A.graph();
    for (Vertex cp : ctx_.cops)
      if (g.adjacent_or_equal(cp, x)) return false;
    return true;
  }

  Vertex decide() {
    Arena& A = ctx_.A;
    for (int attempt = 0; attempt < 6; ++attempt) {
      if (runner_.active()) {
        Vertex v = kNoVertex;
        try {
          v = runner_.next();
        } catch (const std::exception& e) {
          runner_.clear();
          start_fallback(std::string("program error: ") + e.what());
          continue;
        }
        if (v != kNoVertex) {
          if (v != ctx_.robber && !A.graph().has_edge(v, ctx_.robber)) {
            runner_.clear();
            start_fallback("program yielded a non-adjacent vertex");
            continue;
          }
          return v;
        }
        finished(runner_.outcome());
        continue;
      }
      const int h = cases::home_face(A, ctx_.robber);
      if (h >= 0) {
        ctx_.state.home_face = h;
        int adjacent = 0;
        for (Vertex cp : ctx_.cops) adjacent += A.graph().has_edge(cp, ctx_.robber);
        bool on_cop = false;
        for (Vertex cp : ctx_.cops) on_cop = on_cop || cp == ctx_.robber;
        if (adjacent == 0 && !on_cop) {
          if (!why_.empty()) ctx_.event("divergence", ctx_.state.tactic, {}, why_);
          why_.clear();
          ctx_.state.phase = "wait";
          ctx_.in_corner_loop = false;
          return ctx_.robber;
        }
        if (adjacent == 1 && !on_cop && start_case(h)) continue;
        if (adjacent != 1 && why_.empty())
          why_ = std::to_string(adjacent) + " cops next to the centre";
      }
      start_fallback(why_.empty() ? "off a centre with no program" : why_);
    }
    // Every attempt ended without a move: the best single step.
    return max_min_step();
  }

  // Far-centre check, then the case table.
  bool start_case(int h) {
    Arena& A = ctx_.A;
    if (opt_.far_centre_check) {
      View here(ctx_, 0);
      std::vector<int> around;
      for (int f = 0; f < dodeca::kFaces; ++f)
        if (f != h && A.dist(A.o(h), A.o(f)) == 196) around.push_back(f);
      std::vector<int> far;
      for (int f : around) {
        auto field = A.to(A.o(f));
        bool ok = true;
        for (Vertex cp : ctx_.cops) ok = ok && field[cp] > 196;
        if (ok) far.push_back(f);
      }
      if (!far.empty()) {
        ctx_.state.label = "far-centre";
        ctx_.state.phase = "case";
        ctx_.state.tactic = "center-approach";
        ctx_.event("dispatch", "far-centre", {{"face", far.front()}});
        ++coverage_["far-centre"];
        runner_ = Runner(go_centre(here, far, "far-centre"));
        return true;
      }
    }
    Dispatch d;
    try {
      d = classify_case(ctx_);
    } catch (const PreconditionError& e) {
      why_ = e.what();
      return false;
    }
    ctx_.state.label = d.label;
    ctx_.state.phase = "case";
    ctx_.state.tactic = d.program;
    ctx_.state.j.clear();
    ctx_.event("dispatch", d.program, d.cert, d.note);
    ++coverage_[d.label];
    try {
      runner_ = Runner(case_program(d));
    } catch (const std::exception& e) {
      why_ = e.what();
      return false;
    }
    return true;
  }

  void finished(const Outcome& r) {
    runner_.clear();
    if (r.kind == Outcome::Centre) {
      ++ctx_.state.centres_reached;
      ctx_.event("arrive", ctx_.state.tactic, {{"face", r.face}});
    } else if (r.kind == Outcome::Blocked) {
      why_ = r.why;
    }
    ctx_.in_corner_loop = false;
    ctx_.state.phase = "wait";
  }

  // Every fallback is a divergence: no case program covers the position.
  void start_fallback(const std::string& why) {
    ctx_.event("divergence", ctx_.state.tactic, {}, why);
    why_.clear();
    ++fallbacks_;
    ctx_.state.phase = "fallback";
    ctx_.state.tactic = "fallback";
    ctx_.in_corner_loop = false;
    runner_ = Runner(fallback_program());
  }

  Program fallback_program() {
    Arena& A = ctx_.A;
    View here(ctx_, 0);
    std::vector<int> order = all_faces();
    auto fr = A.to(ctx_.robber);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fr[A.o(a)] < fr[A.o(b)]; });
    std::vector<int> ok;
    for (int f : order)
      if (A.o(f) != ctx_.robber) ok.push_back(f);
    ok = certified_centres(here, ok);
    ctx_.event("fallback", ok.empty() ? "max-min-step" : "certified-centre",
               {{"certified_centres", static_cast<long>(ok.size())}});
    if (!ok.empty()) return go_centre(here, ok, "fallback");
    return single_step(max_min_step());
  }

  static Program single_step(Vertex v) {
    co_yield v;
    co_return Outcome::done();
  }

  // The neighbour (or stay) farthest from the nearest cop; ties go toward the
  // nearest centre of a face holding no cop.
  Vertex max_min_step() {
    Arena& A = ctx_.A;
    std::vector<Vertex> cand{ctx_.robber};
    for (Vertex w : A.graph().neighbors(ctx_.robber)) cand.push_back(w);
    std::vector<FieldView> cf;
    for (Vertex cp : ctx_.cops) cf.push_back(A.to(cp));
    std::vector<FieldView> free_centres;
    for (int f = 0; f < dodeca::kFaces; ++f) {
      bool empty = true;
      for (Vertex cp : ctx_.cops) empty = empty && !A.in_face(cp, f);
      if (empty) free_centres.push_back(A.to(A.o(f)));
    }
    Vertex best = ctx_.robber;
    int best_d = -1, best_tie = 1 << 20;
    for (Vertex x : cand) {
      int d = 1 << 20;
      for (const auto& f : cf) d = std::min(d, f[x]);
      int tie = 1 << 20;
      for (const auto& f : free_centres) tie = std::min(tie, f[x]);
      if (!safe_step(x)) d = std::min(d, 1);
      if (d > best_d || (d == best_d && tie < best_tie)) {
        best = x;
        best_d = d;
        best_tie = tie;
      }
    }
    return best;
  }

  Ctx ctx_;
  PaperRobberOptions opt_;
  Runner runner_;
  std::map<std::string, long> coverage_;
  long fallbacks_ = 0;
  long steps_ = 0;
  std::string why_;
};

}  // namespace lazycops
