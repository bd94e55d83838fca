#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazycops/adversaries.hpp"
#include "lazycops/construct.hpp"
#include "lazycops/solver.hpp"
#include "lazycops/strategy.hpp"
#include "lazycops/validate.hpp"

namespace lazycops {

// A graph by id: "q-prime", "dodecahedron" or "layered:L". Layered graphs come
// with their arena (landmarks, symmetries, distance cache).
struct GraphHandle {
  std::string id;
  std::shared_ptr<const Graph> graph;
  std::shared_ptr<Arena> arena;

  const Graph& g() const { return *graph; }
};

inline int parse_layers(const std::string& id) {
  const std::string pre = "layered:";
  if (id.rfind(pre, 0) != 0) return -1;
  std::size_t used = 0;
  int L = 0;
  try {
    L = std::stoi(id.substr(pre.size()), &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad graph id '" + id + "'");
  }
  if (used != id.size() - pre.size()) throw std::invalid_argument("bad graph id '" + id + "'");
  if (L < 1) throw std::invalid_argument("layered graph needs at least one layer");
  return L;
}

inline GraphHandle load_graph(const std::string& id) {
  GraphHandle h;
  h.id = id;
  if (id == "q-prime") {
    h.graph = std::make_shared<const Graph>(build_subdivided_cube().graph);
  } else if (id == "dodecahedron") {
    h.graph = std::make_shared<const Graph>(build_dodecahedron());
  } else if (int L = parse_layers(id); L > 0) {
    h.arena = std::make_shared<Arena>(L);
    h.graph = std::shared_ptr<const Graph>(h.arena, &h.arena->graph());
  } else {
    throw std::invalid_argument("unknown graph id '" + id + "'");
  }
  return h;
}

// Graph ids are cheap to reload except the arenas; share those.
class GraphCache {
 public:
  GraphHandle get(const std::string& id) {
    std::lock_guard<std::mutex> lock(m_);
    auto it = cache_.find(id);
    if (it != cache_.end()) return it->second;
    return cache_[id] = load_graph(id);
  }

 private:
  std::mutex m_;
  std::map<std::string, GraphHandle> cache_;
};

// ---------------------------------------------------------------------------
// Strategy factories

inline std::vector<Vertex> random_start(const Graph& g, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vertex> s;
  for (int i = 0; i < k; ++i) s.push_back(static_cast<Vertex>(rng() % g.num_vertices()));
  return s;
}

inline const std::vector<std::string>& arena_cop_kinds() {
  static const std::vector<std::string> k = {"greedy", "random-walk", "center-guard", "encircle",
                                             "mirror-prober"};
  return k;
}

// Cop kinds: fixed, greedy, solver on every graph; on layered graphs greedy is
// the arena version and random-walk, center-guard, encircle, mirror-prober
// and scripted:<case label> are available too.
inline std::unique_ptr<CopStrategy> make_cops(const GraphHandle& h, const RuleSet& rules,
                                              const std::string& kind, std::vector<Vertex> start,
                                              std::uint64_t seed) {
  if (kind == "solver") {
    auto t = std::make_shared<PositionTable>(h.g(), rules);
    return std::make_unique<SolvedCops>(t, false);
  }
  if (static_cast<int>(start.size()) != rules.k)
    throw std::invalid_argument("expected " + std::to_string(rules.k) + " cop start positions");
  if (kind == "fixed") return std::make_unique<FixedCops>(start);
  if (!h.arena) {
    if (kind == "greedy") return std::make_unique<GreedyCops>(start);
    throw std::invalid_argument("cop kind '" + kind + "' needs a layered graph");
  }
  Arena& A = *h.arena;
  if (kind == "greedy") return std::make_unique<GreedyAdversary>(A, start);
  if (kind == "random-walk") return std::make_unique<RandomWalkAdversary>(A, start, seed);
  if (kind == "center-guard") return std::make_unique<CenterGuardAdversary>(A, start);
  if (kind == "encircle") return std::make_unique<EncircleAdversary>(A, start);
  if (kind == "mirror-prober") return std::make_unique<MirrorProberAdversary>(A, start);
  if (kind.rfind("scripted:", 0) == 0) {
    if (A.layers() != Arena::kLayers) throw std::invalid_argument("scripted cops need layered:49");
    auto s = find_scenario(A, kind.substr(9), seed);
    if (!s) throw std::runtime_error("no scenario found for " + kind);
    return std::make_unique<ScriptedAdversary>(A, start, *s);
  }
  throw std::invalid_argument("unknown cop kind '" + kind + "'");
}

// Robber kinds: paper (layered:49, three lazy cops), stay, solver.
inline std::unique_ptr<RobberStrategy> make_robber(const GraphHandle& h, const RuleSet& rules,
                                                   const std::string& kind) {
  if (kind == "paper") {
    if (!h.arena) throw std::invalid_argument("paper robber needs layered:49");
    return std::make_unique<PaperRobber>(*h.arena);
  }
  if (kind == "stay") return std::make_unique<StayRobber>(0);
  if (kind == "solver") {
    auto t = std::make_shared<PositionTable>(h.g(), rules);
    return std::make_unique<SolvedRobber>(t);
  }
  throw std::invalid_argument("unknown robber kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Matches and tournaments

struct MatchSpec {
  std::string graph = "q-prime";
  RuleSet rules;
  std::string cops = "greedy";
  std::vector<Vertex> start;  // empty: drawn from the seed
  std::string robber = "solver";
  int max_rounds = 1000;
  std::uint64_t seed = 1;
};

struct MatchResult {
  Transcript transcript;
  nlohmann::ordered_json robber_log;  // paper robber only
  double seconds = 0;
};

inline MatchResult run_spec(const GraphHandle& h, const MatchSpec& s) {
  if (s.max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  auto start = s.start.empty() ? random_start(h.g(), s.rules.k, s.seed) : s.start;
  auto cops = make_cops(h, s.rules, s.cops, start, s.seed);
  auto robber = make_robber(h, s.rules, s.robber);
  auto t0 = std::chrono::steady_clock::now();
  MatchResult r;
  r.transcript = run_match(h.g(), h.id, s.rules, *cops, *robber, s.max_rounds, true);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (auto* p = dynamic_cast<PaperRobber*>(robber.get())) r.robber_log = p->log_json();
  return r;
}

struct TournamentReport {
  struct Entry {
    std::string adversary;
    std::vector<Vertex> start;
    OutcomeKind outcome = OutcomeKind::Survived;
    int round = 0;
    long divergences = 0, violations = 0, fallbacks = 0;
    double seconds = 0;
  };
  std::vector<Entry> matches;
  std::map<std::string, long> coverage;
  std::map<std::string, long> outcomes;
  long divergences = 0, violations = 0;
  double total_seconds = 0, max_seconds = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["matches"] = nlohmann::ordered_json::array();
    for (const auto& e : matches)
      j["matches"].push_back({{"adversary", e.adversary},
                              {"start", e.start},
                              {"outcome", lazycops::to_string(e.outcome)},
                              {"round", e.round},
                              {"divergences", e.divergences},
                              {"certificate_violations", e.violations},
                              {"fallbacks", e.fallbacks},
                              {"seconds", e.seconds}});
    j["outcomes"] = outcomes;
    j["coverage"] = coverage;
    j["divergences"] = divergences;
    j["certificate_violations"] = violations;
    j["wall_time"] = {{"total", total_seconds},
                      {"mean", matches.empty() ? 0.0 : total_seconds / matches.size()},
                      {"max", max_seconds}};
    return j;
  }
};

// The paper robber against every listed adversary from every placement.
// Adversary names: the arena kinds, "random-walk/<seed>" and "scripted:<label>";
// "scripted:all" expands to every label the scenario finder reaches.
inline TournamentReport run_tournament(Arena& A, std::vector<std::string> adversaries, int placements,
                                       int max_rounds, std::uint64_t seed,
                                       const std::function<void(const TournamentReport::Entry&)>& progress = {}) {
  const RuleSet rules{Variant::OneCopMoves, LazySemantics::AtMostOne, 3};
  std::vector<std::string> names;
  std::map<std::string, Scenario> scenarios;
  for (const auto& a : adversaries) {
    if (a == "scripted:all") {
      for (const auto& l : case_labels())
        if (auto s = find_scenario(A, l, seed)) {
          names.push_back("scripted:" + l);
          scenarios[l] = *s;
        }
    } else {
      names.push_back(a);
    }
  }
  std::vector<std::vector<Vertex>> starts;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < placements; ++i) starts.push_back(random_start(A.graph(), 3, rng()));

  TournamentReport rep;
  for (const auto& name : names) {
    for (const auto& s : starts) {
      std::unique_ptr<CopStrategy> cops;
      if (name.rfind("scripted:", 0) == 0) {
        std::string label = name.substr(9);
        if (!scenarios.count(label)) {
          auto sc = find_scenario(A, label, seed);
          if (!sc) throw std::runtime_error("no scenario found for " + name);
          scenarios[label] = *sc;
        }
        cops = std::make_unique<ScriptedAdversary>(A, s, scenarios[label]);
      } else if (name.rfind("random-walk/", 0) == 0) {
        cops = std::make_unique<RandomWalkAdversary>(A, s, std::stoull(name.substr(12)));
      } else {
        GraphHandle h{"layered:" + std::to_string(A.layers()), nullptr, nullptr};
        h.arena = std::shared_ptr<Arena>(&A, [](Arena*) {});
        h.graph = std::shared_ptr<const Graph>(h.arena, &A.graph());
        cops = make_cops(h, rules, name, s, seed);
      }
      PaperRobber robber(A);
      auto t0 = std::chrono::steady_clock::now();
      auto t = run_match(A.graph(), "layered:" + std::to_string(A.layers()), rules, *cops, robber,
                         max_rounds, false);
      TournamentReport::Entry e;
      e.adversary = name;
      e.start = s;
      e.outcome = t.outcome;
      e.round = t.outcome_round;
      e.divergences = robber.divergences();
      e.violations = robber.guarantee_violations();
      e.fallbacks = robber.fallbacks();
      e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      for (const auto& [k, v] : robber.coverage()) rep.coverage[k] += v;
      ++rep.outcomes[lazycops::to_string(t.outcome)];
      rep.divergences += e.divergences;
      rep.violations += e.violations;
      rep.total_seconds += e.seconds;
      rep.max_seconds = std::max(rep.max_seconds, e.seconds);
      if (progress) progress(e);
      rep.matches.push_back(std::move(e));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Play protocol. Requests and responses are JSON objects; a response either
// carries "ok": true or "ok": false with an "error" and leaves the session
// untouched.

class PlaySession {
 public:
  PlaySession(GraphHandle h, RuleSet rules, std::string robber_kind, std::vector<Vertex> cops)
      : h_(std::move(h)), rules_(rules), robber_kind_(std::move(robber_kind)) {
    robber_ = make_robber(h_, rules_, robber_kind_);
    c_ = place_cops(h_.g(), rules_, cops);
    c_ = place_robber(c_, robber_->place(c_, rules_));
    t_.graph_id = h_.id;
    t_.rules = rules_;
    t_.cop_start = c_.cops;
    t_.robber_start = c_.robber;
  }

  const GameConfig& config() const { return c_; }

  nlohmann::ordered_json state() const {
    nlohmann::ordered_json j{{"ok", true},
                             {"graph", h_.id},
                             {"rules", to_json(rules_)},
                             {"robber_kind", robber_kind_},
                             {"cop_positions", c_.cops},
                             {"robber", c_.robber},
                             {"round", c_.round},
                             {"turn", to_string(c_.turn)},
                             {"captured", c_.captured}};
    // Per cop: targets reachable by moving that cop alone.
    nlohmann::ordered_json cops = nlohmann::ordered_json::array(), robber = nlohmann::ordered_json::array();
    bool pass = false;
    if (!c_.over() && c_.turn == Side::Cops) {
      for (std::size_t i = 0; i < c_.cops.size(); ++i) {
        auto targets = nlohmann::ordered_json::array();
        auto try_to = [&](Vertex w) {
          auto next = c_.cops;
          next[i] = w;
          if (illegal_reason(c_, rules_, Move::cops(next)).empty()) targets.push_back(w);
        };
        try_to(c_.cops[i]);
        for (Vertex w : h_.g().neighbors(c_.cops[i])) try_to(w);
        cops.push_back(std::move(targets));
      }
      pass = illegal_reason(c_, rules_, Move::cops(c_.cops)).empty();
    } else if (!c_.over()) {
      robber.push_back(c_.robber);
      for (Vertex w : h_.g().neighbors(c_.robber)) robber.push_back(w);
    }
    j["legal"] = {{"cops", std::move(cops)}, {"robber", std::move(robber)}, {"pass", pass}};
    return j;
  }

  // {"cop_index": i, "to": v} moves one cop; {"to": [..]} gives every cop.
  nlohmann::ordered_json cop_move(const nlohmann::json& req) {
    if (c_.over()) return error("game is over");
    if (c_.turn != Side::Cops) return error("not the cops' turn");
    std::vector<Vertex> next = c_.cops;
    if (!req.contains("to")) return error("missing 'to'");
    if (req.at("to").is_array()) {
      next = req.at("to").get<std::vector<Vertex>>();
    } else {
      if (!req.contains("cop_index")) return error("missing 'cop_index'");
      long i = req.at("cop_index").get<long>();
      if (i < 0 || i >= static_cast<long>(next.size())) return error("cop_index out of range");
      next[i] = req.at("to").get<Vertex>();
    }
    return apply(Move::cops(std::move(next)));
  }

  nlohmann::ordered_json robber_auto() {
    if (c_.over()) return error("game is over");
    if (c_.turn != Side::Robber) return error("not the robber's turn");
    Vertex v;
    try {
      v = robber_->move(c_, rules_);
    } catch (const std::exception& e) {
      return error(std::string("robber strategy failed: ") + e.what());
    }
    return apply(Move::robber(v));
  }

  nlohmann::ordered_json transcript() const {
    Transcript t = t_;
    t.outcome = c_.captured ? OutcomeKind::Captured : OutcomeKind::Survived;
    t.outcome_round = c_.captured ? c_.capture_round : c_.round;
    return {{"ok", true}, {"transcript", to_json(t)}};
  }

 private:
  static nlohmann::ordered_json error(std::string why) { return {{"ok", false}, {"error", std::move(why)}}; }

  nlohmann::ordered_json apply(const Move& m) {
    auto why = illegal_reason(c_, rules_, m);
    if (!why.empty()) return error(why);
    MoveRecord rec{m.actor, m.actor == Side::Robber ? std::vector<Vertex>{c_.robber} : c_.cops, m.to};
    c_ = apply_move(c_, rules_, m);
    t_.moves.push_back(std::move(rec));
    return state();
  }

  GraphHandle h_;
  RuleSet rules_;
  std::string robber_kind_;
  std::unique_ptr<RobberStrategy> robber_;
  GameConfig c_;
  Transcript t_;
};

// Sessions by id; one mutex per session so sessions run concurrently.
class SessionStore {
 public:
  explicit SessionStore(std::shared_ptr<GraphCache> graphs = std::make_shared<GraphCache>())
      : graphs_(std::move(graphs)) {}

  // {"graph", "rules": {variant, semantics, k}, "robber_kind", "cops": [..]}
  nlohmann::ordered_json new_session(const nlohmann::json& req) {
    try {
      RuleSet rules = rules_from_json(req.at("rules"));
      auto h = graphs_->get(req.value("graph", std::string("q-prime")));
      std::vector<Vertex> cops = req.contains("cops") ? req.at("cops").get<std::vector<Vertex>>()
                                                      : random_start(h.g(), rules.k, req.value("seed", 1u));
      auto s = std::make_shared<Entry>(h, rules, req.value("robber_kind", std::string("solver")), cops);
      std::lock_guard<std::mutex> lock(m_);
      std::string id = std::to_string(++next_);
      sessions_[id] = s;
      auto out = s->session.state();
      out["session"] = id;
      return out;
    } catch (const std::exception& e) {
      return {{"ok", false}, {"error", e.what()}};
    }
  }

  // Runs op on the session named in the request.
  nlohmann::ordered_json with(const nlohmann::json& req,
                              const std::function<nlohmann::ordered_json(PlaySession&)>& op) {
    std::shared_ptr<Entry> s;
    {
      std::lock_guard<std::mutex> lock(m_);
      auto it = req.contains("session") ? sessions_.find(req.at("session").get<std::string>()) : sessions_.end();
      if (it == sessions_.end()) return {{"ok", false}, {"error", "unknown session"}};
      s = it->second;
    }
    std::lock_guard<std::mutex> lock(s->m);
    try {
      return op(s->session);
    } catch (const std::exception& e) {
      return {{"ok", false}, {"error", e.what()}};
    }
  }

  // Dispatches {"op": name, ...}.
  nlohmann::ordered_json handle(const std::string& op, const nlohmann::json& req) {
    if (op == "new_session") return new_session(req);
    if (op == "state") return with(req, [](PlaySession& s) { return s.state(); });
    if (op == "cop_move") return with(req, [&](PlaySession& s) { return s.cop_move(req); });
    if (op == "robber_auto") return with(req, [](PlaySession& s) { return s.robber_auto(); });
    if (op == "transcript") return with(req, [](PlaySession& s) { return s.transcript(); });
    return {{"ok", false}, {"error", "unknown op '" + op + "'"}};
  }

 private:
  struct Entry {
    Entry(GraphHandle h, RuleSet r, std::string kind, std::vector<Vertex> cops)
        : session(std::move(h), r, std::move(kind), std::move(cops)) {}
    std::mutex m;
    PlaySession session;
  };
  std::shared_ptr<GraphCache> graphs_;
  std::mutex m_;
  long next_ = 0;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace lazycops
