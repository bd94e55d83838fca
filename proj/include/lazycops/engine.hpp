#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazycops/graph.hpp"

namespace lazycops {

enum class Variant { Classical, OneCopMoves };
enum class LazySemantics { AtMostOne, ExactlyOne };
enum class Side { Robber, Cops };

struct RuleSet {
  Variant variant = Variant::Classical;
  LazySemantics lazy = LazySemantics::AtMostOne;
  int k = 1;

  bool lazy_cops() const { return variant == Variant::OneCopMoves; }
  bool operator==(const RuleSet&) const = default;
};

inline std::string to_string(Variant v) { return v == Variant::Classical ? "classical" : "lazy"; }
inline std::string to_string(LazySemantics s) {
  return s == LazySemantics::AtMostOne ? "at-most-one" : "exactly-one";
}
inline std::string to_string(Side s) { return s == Side::Robber ? "robber" : "cops"; }

inline Variant parse_variant(const std::string& s) {
  if (s == "classical") return Variant::Classical;
  if (s == "lazy" || s == "one-cop-moves") return Variant::OneCopMoves;
  throw std::invalid_argument("unknown variant '" + s + "'");
}
inline LazySemantics parse_semantics(const std::string& s) {
  if (s == "at-most-one") return LazySemantics::AtMostOne;
  if (s == "exactly-one") return LazySemantics::ExactlyOne;
  throw std::invalid_argument("unknown lazy semantics '" + s + "'");
}

inline std::string describe(const RuleSet& r) {
  std::string s = to_string(r.variant);
  if (r.lazy_cops()) s += "/" + to_string(r.lazy);
  return s + " k=" + std::to_string(r.k);
}

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GameConfig {
  const Graph* graph = nullptr;
  std::vector<Vertex> cops;
  Vertex robber = kNoVertex;
  Side turn = Side::Robber;
  int round = 0;
  bool captured = false;
  int capture_round = -1;

  bool robber_placed() const { return robber != kNoVertex; }
  bool over() const { return captured; }
  bool robber_on_cop() const {
    for (Vertex c : cops)
      if (c == robber) return true;
    return false;
  }
};

struct Move {
  Side actor = Side::Robber;
  std::vector<Vertex> to;  // one entry for the robber, k entries for the cops

  static Move robber(Vertex v) { return {Side::Robber, {v}}; }
  static Move cops(std::vector<Vertex> v) { return {Side::Cops, std::move(v)}; }
  bool operator==(const Move&) const = default;
};

inline GameConfig place_cops(const Graph& g, const RuleSet& rules, std::vector<Vertex> positions) {
  if (rules.k < 1) throw GameError("cop count must be at least 1");
  if (static_cast<int>(positions.size()) != rules.k)
    throw GameError("expected " + std::to_string(rules.k) + " cop positions");
  for (Vertex v : positions)
    if (v >= g.num_vertices()) throw GameError("cop position " + std::to_string(v) + " out of range");
  GameConfig c;
  c.graph = &g;
  c.cops = std::move(positions);
  return c;
}

inline GameConfig place_robber(GameConfig c, Vertex r) {
  if (c.robber_placed()) throw GameError("robber already placed");
  if (r >= c.graph->num_vertices()) throw GameError("robber position " + std::to_string(r) + " out of range");
  c.robber = r;
  c.turn = Side::Robber;
  c.round = 1;
  if (c.robber_on_cop()) {
    c.captured = true;
    c.capture_round = 0;
  }
  return c;
}

inline std::vector<Move> legal_moves(const GameConfig& c, const RuleSet& rules) {
  if (!c.robber_placed()) throw GameError("robber not placed");
  if (c.over()) throw GameError("game already decided");
  const Graph& g = *c.graph;
  std::vector<Move> out;
  if (c.turn == Side::Robber) {
    out.push_back(Move::robber(c.robber));
    for (Vertex w : g.neighbors(c.robber)) out.push_back(Move::robber(w));
    return out;
  }
  if (rules.lazy_cops()) {
    if (rules.lazy == LazySemantics::AtMostOne) out.push_back(Move::cops(c.cops));
    for (std::size_t i = 0; i < c.cops.size(); ++i)
      for (Vertex w : g.neighbors(c.cops[i])) {
        auto next = c.cops;
        next[i] = w;
        out.push_back(Move::cops(std::move(next)));
      }
    return out;
  }
  std::vector<Vertex> cur = c.cops;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == c.cops.size()) {
      out.push_back(Move::cops(cur));
      return;
    }
    cur[i] = c.cops[i];
    rec(i + 1);
    for (Vertex w : g.neighbors(c.cops[i])) {
      cur[i] = w;
      rec(i + 1);
    }
    cur[i] = c.cops[i];
  };
  rec(0);
  return out;
}

// Why a move is illegal, or empty when it is legal. Cheaper than scanning
// legal_moves for the classical variant with many cops.
inline std::string illegal_reason(const GameConfig& c, const RuleSet& rules, const Move& m) {
  if (!c.robber_placed()) return "robber not placed";
  if (c.over()) return "game already decided";
  if (m.actor != c.turn) return "not " + to_string(m.actor) + "' turn";
  const Graph& g = *c.graph;
  if (m.actor == Side::Robber) {
    if (m.to.size() != 1) return "robber move needs one target";
    if (m.to[0] >= g.num_vertices()) return "target out of range";
    if (!g.adjacent_or_equal(c.robber, m.to[0])) return "robber target not adjacent";
    return {};
  }
  if (m.to.size() != c.cops.size()) return "cop move needs one target per cop";
  int moved = 0;
  for (std::size_t i = 0; i < m.to.size(); ++i) {
    if (m.to[i] >= g.num_vertices()) return "cop target out of range";
    if (m.to[i] == c.cops[i]) continue;
    if (!g.has_edge(c.cops[i], m.to[i]))
      return "cop " + std::to_string(i) + " target not adjacent";
    ++moved;
  }
  if (rules.lazy_cops()) {
    if (moved > 1) return "only one cop may move";
    if (moved == 0 && rules.lazy == LazySemantics::ExactlyOne) return "exactly one cop must move";
  }
  return {};
}

inline bool is_legal(const GameConfig& c, const RuleSet& rules, const Move& m) {
  return illegal_reason(c, rules, m).empty();
}

inline GameConfig apply_move(GameConfig c, const RuleSet& rules, const Move& m) {
  auto why = illegal_reason(c, rules, m);
  if (!why.empty()) throw GameError("illegal move: " + why);
  if (m.actor == Side::Robber) {
    c.robber = m.to[0];
    c.turn = Side::Cops;
  } else {
    c.cops = m.to;
    c.turn = Side::Robber;
  }
  if (c.robber_on_cop()) {
    c.captured = true;
    c.capture_round = c.round;
  } else if (m.actor == Side::Cops) {
    ++c.round;
  }
  return c;
}

// Strategies see the full configuration (perfect information).
class CopStrategy {
 public:
  virtual ~CopStrategy() = default;
  virtual std::vector<Vertex> place(const Graph& g, const RuleSet& rules) = 0;
  virtual Move move(const GameConfig& c, const RuleSet& rules) = 0;
};

class RobberStrategy {
 public:
  virtual ~RobberStrategy() = default;
  virtual Vertex place(const GameConfig& c, const RuleSet& rules) = 0;
  virtual Vertex move(const GameConfig& c, const RuleSet& rules) = 0;
  // True once the strategy has committed to a perpetual oscillation.
  virtual bool oscillating() const { return false; }
};

enum class OutcomeKind { Captured, Survived, Oscillation, Forfeit };

inline std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Captured: return "captured";
    case OutcomeKind::Survived: return "survived";
    case OutcomeKind::Oscillation: return "oscillation";
    case OutcomeKind::Forfeit: return "forfeit";
  }
  return "?";
}

inline OutcomeKind parse_outcome(const std::string& s) {
  for (auto k : {OutcomeKind::Captured, OutcomeKind::Survived, OutcomeKind::Oscillation,
                 OutcomeKind::Forfeit})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

struct MoveRecord {
  Side actor = Side::Robber;
  std::vector<Vertex> from, to;
  bool operator==(const MoveRecord&) const = default;
};

struct Transcript {
  static constexpr int kSchemaVersion = 1;
  std::string graph_id;
  RuleSet rules;
  std::vector<Vertex> cop_start;
  Vertex robber_start = kNoVertex;
  std::vector<MoveRecord> moves;
  OutcomeKind outcome = OutcomeKind::Survived;
  int outcome_round = 0;
  std::string forfeit_side;
  std::string forfeit_reason;
};

inline nlohmann::ordered_json to_json(const RuleSet& r) {
  nlohmann::ordered_json j;
  j["variant"] = to_string(r.variant);
  j["semantics"] = to_string(r.lazy);
  j["k"] = r.k;
  return j;
}

inline RuleSet rules_from_json(const nlohmann::json& j) {
  RuleSet r;
  r.variant = parse_variant(j.at("variant").get<std::string>());
  r.lazy = parse_semantics(j.value("semantics", std::string("at-most-one")));
  r.k = j.at("k").get<int>();
  return r;
}

inline nlohmann::ordered_json to_json(const Transcript& t) {
  nlohmann::ordered_json j;
  j["schema"] = Transcript::kSchemaVersion;
  j["graph_id"] = t.graph_id;
  j["rules"] = to_json(t.rules);
  j["placements"] = {{"cops", t.cop_start}, {"robber", t.robber_start}};
  auto moves = nlohmann::ordered_json::array();
  for (const auto& m : t.moves)
    moves.push_back({{"actor", to_string(m.actor)}, {"from", m.from}, {"to", m.to}});
  j["moves"] = std::move(moves);
  nlohmann::ordered_json out{{"kind", to_string(t.outcome)}, {"round", t.outcome_round}};
  if (t.outcome == OutcomeKind::Forfeit) {
    out["side"] = t.forfeit_side;
    out["reason"] = t.forfeit_reason;
  }
  j["outcome"] = std::move(out);
  return j;
}

inline Transcript transcript_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<int>() != Transcript::kSchemaVersion)
    throw std::runtime_error("unsupported transcript schema");
  Transcript t;
  t.graph_id = j.at("graph_id").get<std::string>();
  t.rules = rules_from_json(j.at("rules"));
  t.cop_start = j.at("placements").at("cops").get<std::vector<Vertex>>();
  t.robber_start = j.at("placements").at("robber").get<Vertex>();
  for (const auto& m : j.at("moves")) {
    MoveRecord r;
    r.actor = m.at("actor").get<std::string>() == "robber" ? Side::Robber : Side::Cops;
    r.from = m.at("from").get<std::vector<Vertex>>();
    r.to = m.at("to").get<std::vector<Vertex>>();
    t.moves.push_back(std::move(r));
  }
  const auto& o = j.at("outcome");
  t.outcome = parse_outcome(o.at("kind").get<std::string>());
  t.outcome_round = o.at("round").get<int>();
  t.forfeit_side = o.value("side", std::string());
  t.forfeit_reason = o.value("reason", std::string());
  return t;
}

// Rebuilds the final configuration by applying every recorded move.
inline GameConfig replay(const Graph& g, const Transcript& t) {
  auto c = place_robber(place_cops(g, t.rules, t.cop_start), t.robber_start);
  for (const auto& m : t.moves) {
    const auto& cur = m.actor == Side::Robber ? std::vector<Vertex>{c.robber} : c.cops;
    if (cur != m.from) throw GameError("transcript move does not start from the current position");
    c = apply_move(c, t.rules, Move{m.actor, m.to});
  }
  return c;
}

struct MatchObserver {
  virtual ~MatchObserver() = default;
  virtual void on_move(const GameConfig&, const MoveRecord&) {}
};

inline Transcript run_match(const Graph& g, const std::string& graph_id, const RuleSet& rules,
                            CopStrategy& cops, RobberStrategy& robber, int max_rounds,
                            bool record_moves = true, MatchObserver* observer = nullptr) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be at least 1");
  Transcript t;
  t.graph_id = graph_id;
  t.rules = rules;
  auto forfeit = [&](Side s, const std::string& why, int round) {
    t.outcome = OutcomeKind::Forfeit;
    t.forfeit_side = to_string(s);
    t.forfeit_reason = why;
    t.outcome_round = round;
    return t;
  };
  GameConfig c;
  try {
    c = place_cops(g, rules, cops.place(g, rules));
  } catch (const std::exception& e) {
    return forfeit(Side::Cops, e.what(), 0);
  }
  t.cop_start = c.cops;
  try {
    c = place_robber(c, robber.place(c, rules));
  } catch (const std::exception& e) {
    return forfeit(Side::Robber, e.what(), 0);
  }
  t.robber_start = c.robber;
  while (!c.over() && c.round <= max_rounds) {
    Move m;
    try {
      m = c.turn == Side::Robber ? Move::robber(robber.move(c, rules)) : cops.move(c, rules);
    } catch (const std::exception& e) {
      return forfeit(c.turn, e.what(), c.round);
    }
    auto why = illegal_reason(c, rules, m);
    if (!why.empty()) return forfeit(c.turn, why, c.round);
    MoveRecord rec{m.actor, m.actor == Side::Robber ? std::vector<Vertex>{c.robber} : c.cops, m.to};
    c = apply_move(c, rules, m);
    if (observer) observer->on_move(c, rec);
    if (record_moves) t.moves.push_back(std::move(rec));
  }
  if (c.captured) {
    t.outcome = OutcomeKind::Captured;
    t.outcome_round = c.capture_round;
  } else {
    t.outcome = robber.oscillating() ? OutcomeKind::Oscillation : OutcomeKind::Survived;
    t.outcome_round = max_rounds;
  }
  return t;
}

// Simple strategies for small graphs and smoke tests.
class StayRobber : public RobberStrategy {
 public:
  explicit StayRobber(Vertex start = 0) : start_(start) {}
  Vertex place(const GameConfig&, const RuleSet&) override { return start_; }
  Vertex move(const GameConfig& c, const RuleSet&) override { return c.robber; }

 private:
  Vertex start_;
};

class FixedCops : public CopStrategy {
 public:
  explicit FixedCops(std::vector<Vertex> at) : at_(std::move(at)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return at_; }
  Move move(const GameConfig& c, const RuleSet& rules) override {
    if (rules.lazy_cops() && rules.lazy == LazySemantics::ExactlyOne) {
      auto next = c.cops;
      next[0] = c.graph->neighbors(c.cops[0])[0];
      return Move::cops(next);
    }
    return Move::cops(c.cops);
  }

 private:
  std::vector<Vertex> at_;
};

// Cops step along BFS shortest paths toward the robber: every cop in the
// classical game, only the nearest one when cops are lazy.
class GreedyCops : public CopStrategy {
 public:
  explicit GreedyCops(std::vector<Vertex> at) : at_(std::move(at)) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override { return at_; }
  Move move(const GameConfig& c, const RuleSet& rules) override {
    auto field = bfs(*c.graph, c.robber);
    auto step = [&](Vertex u) {
      for (Vertex w : c.graph->neighbors(u))
        if (field.dist[w] + 1 == field.dist[u]) return w;
      return u;
    };
    auto next = c.cops;
    if (!rules.lazy_cops()) {
      for (auto& u : next) u = step(u);
      return Move::cops(next);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < next.size(); ++i)
      if (field.dist[next[i]] < field.dist[next[best]]) best = i;
    next[best] = step(next[best]);
    if (next == c.cops && rules.lazy == LazySemantics::ExactlyOne)
      next[best] = c.graph->neighbors(next[best])[0];
    return Move::cops(next);
  }

 private:
  std::vector<Vertex> at_;
};

}  // namespace lazycops
