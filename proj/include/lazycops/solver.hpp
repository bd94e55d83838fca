#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lazycops/engine.hpp"
#include "lazycops/graph.hpp"

namespace lazycops {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted cop tuples (multisets of size k over n vertices) ranked in colex
// order: c1 ≤ … ≤ ck maps to the k-combination d_i = c_i + i.
class MultisetCodec {
 public:
  MultisetCodec(std::uint32_t n, int k) : n_(n), k_(k) {
    binom_.assign(n + k + 1, std::vector<std::uint64_t>(k + 2, 0));
    for (std::uint32_t a = 0; a <= n + k; ++a) {
      binom_[a][0] = 1;
      for (int b = 1; b <= k + 1 && b <= static_cast<int>(a); ++b)
        binom_[a][b] = binom_[a - 1][b - 1] + binom_[a - 1][b];
    }
    count_ = binom_[n + k - 1][k];
  }

  static std::uint64_t count(std::uint32_t n, int k) {
    // C(n+k-1, k) with overflow saturation.
    long double c = 1;
    for (int i = 1; i <= k; ++i) c = c * (n + k - i) / i;
    return c > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(c + 0.5L);
  }

  std::uint64_t size() const { return count_; }
  int k() const { return k_; }

  std::uint64_t encode(const std::vector<Vertex>& sorted) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < k_; ++i) idx += binom_[sorted[i] + i][i + 1];
    return idx;
  }

  std::vector<Vertex> decode(std::uint64_t idx) const {
    std::vector<Vertex> out(k_);
    for (int i = k_ - 1; i >= 0; --i) {
      std::uint32_t d = i;
      while (d + 1 <= n_ + k_ - 1 && binom_[d + 1][i + 1] <= idx) ++d;
      idx -= binom_[d][i + 1];
      out[i] = d - i;
    }
    return out;
  }

 private:
  std::uint32_t n_;
  int k_;
  std::vector<std::vector<std::uint64_t>> binom_;
  std::uint64_t count_ = 0;
};

struct SolveOptions {
  std::uint64_t budget = std::uint64_t{1} << 32;  // encoded positions
};

// Positions are (cop multiset, robber vertex, side to move).
class PositionTable {
 public:
  static constexpr std::uint32_t kNoRank = UINT32_MAX;

  PositionTable(const Graph& g, const RuleSet& rules, const SolveOptions& opt = {})
      : g_(&g), rules_(rules), codec_(g.num_vertices(), rules.k) {
    if (rules.k < 1) throw std::invalid_argument("k must be at least 1");
    std::uint64_t tuples = MultisetCodec::count(g.num_vertices(), rules.k);
    if (tuples == UINT64_MAX || tuples > opt.budget / (2 * std::max<std::uint64_t>(1, g.num_vertices())))
      throw BudgetExceeded("state space exceeds budget for k=" + std::to_string(rules.k));
    positions_ = tuples * g.num_vertices() * 2;
    solve();
  }

  const Graph& graph() const { return *g_; }
  const RuleSet& rules() const { return rules_; }
  const MultisetCodec& codec() const { return codec_; }
  std::uint64_t positions() const { return positions_; }
  std::uint64_t cop_win_count() const { return cop_wins_; }
  std::uint64_t iterations() const { return iterations_; }

  std::uint64_t index(const std::vector<Vertex>& cops, Vertex robber, Side to_move) const {
    auto s = cops;
    std::sort(s.begin(), s.end());
    return index_sorted(codec_.encode(s), robber, to_move);
  }
  std::uint64_t index_sorted(std::uint64_t tuple, Vertex robber, Side to_move) const {
    return (tuple * g_->num_vertices() + robber) * 2 + (to_move == Side::Cops ? 1 : 0);
  }

  bool cop_win(std::uint64_t pos) const { return rank_[pos] != kNoRank; }
  std::uint32_t rank(std::uint64_t pos) const { return rank_[pos]; }
  bool cop_win(const std::vector<Vertex>& cops, Vertex robber, Side to_move) const {
    return cop_win(index(cops, robber, to_move));
  }
  // Half-turns to capture under optimal play; kNoRank for robber wins.
  std::uint32_t rank(const std::vector<Vertex>& cops, Vertex robber, Side to_move) const {
    return rank_[index(cops, robber, to_move)];
  }

  // Sorted successor tuples of a sorted cop tuple under the rules.
  std::vector<std::uint64_t> cop_successors(std::uint64_t tuple) const {
    auto cops = codec_.decode(tuple);
    std::vector<std::uint64_t> out;
    auto push = [&](std::vector<Vertex> c) {
      std::sort(c.begin(), c.end());
      out.push_back(codec_.encode(c));
    };
    if (rules_.lazy_cops()) {
      if (rules_.lazy == LazySemantics::AtMostOne) push(cops);
      for (int i = 0; i < rules_.k; ++i) {
        if (i > 0 && cops[i] == cops[i - 1]) continue;
        for (Vertex w : g_->neighbors(cops[i])) {
          auto c = cops;
          c[i] = w;
          push(std::move(c));
        }
      }
    } else {
      std::vector<Vertex> cur(cops);
      auto rec = [&](auto&& self, int i) -> void {
        if (i == rules_.k) {
          push(cur);
          return;
        }
        cur[i] = cops[i];
        self(self, i + 1);
        for (Vertex w : g_->neighbors(cops[i])) {
          cur[i] = w;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  void solve() {
    const Vertex n = g_->num_vertices();
    const std::uint64_t tuples = codec_.size();
    rank_.assign(positions_, kNoRank);
    // Robber-to-move nodes count unresolved successors (closed neighborhood).
    std::vector<std::uint32_t> pending(positions_ / 2);
    std::deque<std::uint64_t> queue;
    for (std::uint64_t t = 0; t < tuples; ++t) {
      auto cops = codec_.decode(t);
      for (Vertex r = 0; r < n; ++r) {
        pending[t * n + r] = static_cast<std::uint32_t>(g_->degree(r) + 1);
        if (std::binary_search(cops.begin(), cops.end(), r)) {
          for (Side s : {Side::Robber, Side::Cops}) {
            auto p = index_sorted(t, r, s);
            rank_[p] = 0;
            queue.push_back(p);
          }
        }
      }
    }
    // Cop moves are symmetric, so predecessors of a tuple are its successors.
    std::vector<std::vector<std::uint64_t>> moves(tuples);
    for (std::uint64_t t = 0; t < tuples; ++t) moves[t] = cop_successors(t);
    while (!queue.empty()) {
      auto p = queue.front();
      queue.pop_front();
      ++iterations_;
      const std::uint64_t t = p / 2 / n;
      const Vertex r = static_cast<Vertex>(p / 2 % n);
      const bool cops_to_move = p % 2 == 1;
      const std::uint32_t next = rank_[p] + 1;
      if (cops_to_move) {
        // Predecessors: robber-to-move (t, r') with r' ∈ N[r].
        auto visit = [&](Vertex rp) {
          auto q = index_sorted(t, rp, Side::Robber);
          if (rank_[q] != kNoRank) return;
          if (--pending[t * n + rp] == 0) {
            rank_[q] = next;
            queue.push_back(q);
          }
        };
        visit(r);
        for (Vertex w : g_->neighbors(r)) visit(w);
      } else {
        for (std::uint64_t tp : moves[t]) {
          auto q = index_sorted(tp, r, Side::Cops);
          if (rank_[q] != kNoRank) continue;
          rank_[q] = next;
          queue.push_back(q);
        }
      }
    }
    for (auto r : rank_) cop_wins_ += r != kNoRank;
  }

  const Graph* g_;
  RuleSet rules_;
  MultisetCodec codec_;
  std::uint64_t positions_ = 0;
  std::vector<std::uint32_t> rank_;
  std::uint64_t cop_wins_ = 0;
  std::uint64_t iterations_ = 0;
};

struct SolveResult {
  RuleSet rules;
  bool cops_win = false;
  std::vector<Vertex> placement;  // optimal cop start when cops win
  std::uint32_t placement_rank = PositionTable::kNoRank;
  std::uint64_t positions = 0, cop_win_positions = 0, iterations = 0;
  std::map<std::uint32_t, std::uint64_t> rank_histogram;
};

// Cops win iff some placement beats every robber start. Among winning
// placements the one with the smallest worst-case rank is chosen, ties by
// smallest encoding.
inline SolveResult resolve_placement(const PositionTable& t) {
  SolveResult out;
  out.rules = t.rules();
  out.positions = t.positions();
  out.cop_win_positions = t.cop_win_count();
  out.iterations = t.iterations();
  const Vertex n = t.graph().num_vertices();
  for (std::uint64_t p = 0; p < t.positions(); ++p)
    if (t.cop_win(p)) ++out.rank_histogram[t.rank(p)];
  for (std::uint64_t tuple = 0; tuple < t.codec().size(); ++tuple) {
    std::uint32_t worst = 0;
    for (Vertex r = 0; r < n && worst != PositionTable::kNoRank; ++r)
      worst = std::max(worst, t.rank(t.index_sorted(tuple, r, Side::Robber)));
    if (worst < out.placement_rank) {
      out.placement_rank = worst;
      out.placement = t.codec().decode(tuple);
      out.cops_win = true;
    }
  }
  return out;
}

inline SolveResult solve(const Graph& g, const RuleSet& rules, const SolveOptions& opt = {}) {
  PositionTable t(g, rules, opt);
  return resolve_placement(t);
}

struct CopNumber {
  std::optional<int> value;  // empty when it exceeds k_max
  std::vector<SolveResult> per_k;
};

inline CopNumber cop_number(const Graph& g, RuleSet rules, int k_max, const SolveOptions& opt = {}) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  CopNumber out;
  for (int k = 1; k <= k_max; ++k) {
    rules.k = k;
    out.per_k.push_back(solve(g, rules, opt));
    if (out.per_k.back().cops_win) {
      out.value = k;
      break;
    }
  }
  return out;
}

inline nlohmann::ordered_json to_json(const SolveResult& r, const std::string& graph_id) {
  nlohmann::ordered_json j;
  j["graph"] = graph_id;
  j["variant"] = to_string(r.rules.variant);
  j["semantics"] = to_string(r.rules.lazy);
  j["k"] = r.rules.k;
  j["winner"] = r.cops_win ? "cops" : "robber";
  if (r.cops_win) {
    j["placement"] = r.placement;
    j["placement_rank"] = r.placement_rank;
  }
  j["positions"] = r.positions;
  j["cop_win_positions"] = r.cop_win_positions;
  j["iterations"] = r.iterations;
  auto hist = nlohmann::ordered_json::object();
  for (auto [rank, count] : r.rank_histogram) hist[std::to_string(rank)] = count;
  j["ranks"] = std::move(hist);
  return j;
}

// Plays minimal-rank successors; ties go to the smallest encoding.
// With strict set, asking for a move from a position the table does not
// label cop-win is an error; otherwise the smallest-encoding move is played.
class SolvedCops : public CopStrategy {
 public:
  explicit SolvedCops(std::shared_ptr<const PositionTable> t, bool strict = true)
      : t_(std::move(t)), strict_(strict) {}
  std::vector<Vertex> place(const Graph&, const RuleSet&) override {
    auto r = resolve_placement(*t_);
    if (!r.cops_win) {
      if (strict_) throw GameError("no winning cop placement at this k");
      return t_->codec().decode(0);
    }
    return r.placement;
  }
  Move move(const GameConfig& c, const RuleSet& rules) override {
    if (strict_ && !t_->cop_win(c.cops, c.robber, Side::Cops))
      throw GameError("position is not a cop win; extracted cop strategy has no guarantee");
    std::optional<Move> best;
    std::pair<std::uint32_t, std::uint64_t> key{PositionTable::kNoRank, 0};
    for (auto& m : legal_moves(c, rules)) {
      auto sorted = m.to;
      std::sort(sorted.begin(), sorted.end());
      std::uint64_t enc = t_->codec().encode(sorted);
      // A capturing move ends the game before the robber moves.
      bool captures = std::binary_search(sorted.begin(), sorted.end(), c.robber);
      std::uint32_t r = captures ? 0 : t_->rank(t_->index_sorted(enc, c.robber, Side::Robber));
      std::pair<std::uint32_t, std::uint64_t> k{r, enc};
      if (!best || k < key) {
        key = k;
        best = std::move(m);
      }
    }
    return *best;
  }

 private:
  std::shared_ptr<const PositionTable> t_;
  bool strict_;
};

// Keeps to robber-win positions; once lost, delays capture as long as possible.
class SolvedRobber : public RobberStrategy {
 public:
  explicit SolvedRobber(std::shared_ptr<const PositionTable> t) : t_(std::move(t)) {}
  Vertex place(const GameConfig& c, const RuleSet&) override {
    return best_of(c, [&](Vertex r) { return t_->rank(c.cops, r, Side::Robber); }, false);
  }
  Vertex move(const GameConfig& c, const RuleSet&) override {
    return best_of(c, [&](Vertex r) { return t_->rank(c.cops, r, Side::Cops); }, true);
  }

 private:
  template <class RankOf>
  Vertex best_of(const GameConfig& c, RankOf rank_of, bool local) const {
    Vertex best = kNoVertex;
    std::uint32_t best_rank = 0;
    auto consider = [&](Vertex r) {
      std::uint32_t k = rank_of(r);
      if (best == kNoVertex || k > best_rank || (k == best_rank && r < best)) {
        best = r;
        best_rank = k;
      }
    };
    if (!local) {
      for (Vertex r = 0; r < c.graph->num_vertices(); ++r) consider(r);
    } else {
      consider(c.robber);
      for (Vertex w : c.graph->neighbors(c.robber)) consider(w);
    }
    return best;
  }

  std::shared_ptr<const PositionTable> t_;
};

// Dominated-vertex elimination: u is removable when N[u] ⊆ N[w] for some
// other remaining w.
struct Dismantling {
  bool dismantlable = false;
  std::vector<Vertex> order;  // removed vertices, last survivor at the end
};

inline Dismantling dismantle(const Graph& g) {
  const Vertex n = g.num_vertices();
  std::vector<char> alive(n, 1);
  Dismantling out;
  auto dominated = [&](Vertex u) {
    for (Vertex w : g.neighbors(u)) {
      if (!alive[w]) continue;
      bool covers = true;
      for (Vertex x : g.neighbors(u))
        if (alive[x] && x != w && !g.has_edge(w, x)) {
          covers = false;
          break;
        }
      if (covers) return true;
    }
    return false;
  };
  Vertex left = n;
  bool progress = true;
  while (left > 1 && progress) {
    progress = false;
    for (Vertex u = 0; u < n; ++u)
      if (alive[u] && dominated(u)) {
        alive[u] = 0;
        out.order.push_back(u);
        --left;
        progress = true;
        break;
      }
  }
  out.dismantlable = left <= 1;
  if (out.dismantlable)
    for (Vertex u = 0; u < n; ++u)
      if (alive[u]) out.order.push_back(u);
  return out;
}

inline bool dismantlable(const Graph& g) { return dismantle(g).dismantlable; }

// Scripted lines in triple notation ⟨p1,…,pk; r⟩ (vertex ids). The first
// triple is the position after the robber's first turn; turns then alternate
// starting with the cops.
struct ScriptedTriple {
  std::vector<Vertex> cops;
  Vertex robber;
};

struct LineReport {
  bool legal = true;
  int bad_index = -1;  // index of the first triple that cannot be reached
  std::string reason;
  bool forced_capture = false;  // every robber reply at the end can be captured
  int implicit_stays = 0;
};

inline LineReport verify_scripted_line(const Graph& g, const RuleSet& rules,
                                       const std::vector<ScriptedTriple>& line) {
  LineReport rep;
  if (line.empty()) {
    rep.legal = false;
    rep.bad_index = 0;
    rep.reason = "empty line";
    return rep;
  }
  GameConfig c;
  try {
    c = place_robber(place_cops(g, rules, line[0].cops), line[0].robber);
    c = apply_move(c, rules, Move::robber(c.robber));
  } catch (const std::exception& e) {
    rep.legal = false;
    rep.bad_index = 0;
    rep.reason = e.what();
    return rep;
  }
  for (std::size_t i = 1; i < line.size(); ++i) {
    // A robber turn spent standing still is not written out: when only the
    // cops change while the robber is on turn, she stayed in between.
    if (c.turn == Side::Robber && !c.over() && line[i].robber == c.robber && line[i].cops != c.cops) {
      c = apply_move(c, rules, Move::robber(c.robber));
      ++rep.implicit_stays;
    }
    Move m = c.turn == Side::Cops ? Move::cops(line[i].cops) : Move::robber(line[i].robber);
    if ((c.turn == Side::Cops && line[i].robber != c.robber) ||
        (c.turn == Side::Robber && line[i].cops != c.cops)) {
      rep.legal = false;
      rep.bad_index = static_cast<int>(i);
      rep.reason = "the side not on turn changed position";
      return rep;
    }
    auto why = c.over() ? std::string("game already decided") : illegal_reason(c, rules, m);
    if (!why.empty()) {
      rep.legal = false;
      rep.bad_index = static_cast<int>(i);
      rep.reason = why;
      return rep;
    }
    c = apply_move(c, rules, m);
  }
  if (c.over()) {
    rep.forced_capture = true;
  } else if (c.turn == Side::Robber) {
    rep.forced_capture = true;
    auto covered = [&](Vertex r) {
      for (Vertex u : c.cops)
        if (g.adjacent_or_equal(u, r)) return true;
      return false;
    };
    if (!covered(c.robber)) rep.forced_capture = false;
    for (Vertex w : g.neighbors(c.robber))
      if (!covered(w)) rep.forced_capture = false;
  }
  return rep;
}

// Triple parser for "<9,5;1> -> <17,5;1>" style text (either bracket form).
inline std::vector<ScriptedTriple> parse_scripted_line(const std::string& text, int label_offset = 0) {
  std::vector<ScriptedTriple> out;
  std::size_t i = 0;
  auto num = [&](std::size_t& at) {
    while (at < text.size() && !std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    std::size_t start = at;
    while (at < text.size() && std::isdigit(static_cast<unsigned char>(text[at]))) ++at;
    if (start == at) throw std::invalid_argument("malformed scripted line: " + text);
    return static_cast<Vertex>(std::stoul(text.substr(start, at - start)) - label_offset);
  };
  while ((i = text.find('<', i)) != std::string::npos) {
    std::size_t close = text.find('>', i);
    std::size_t semi = text.find(';', i);
    if (close == std::string::npos || semi == std::string::npos || semi > close)
      throw std::invalid_argument("malformed scripted line: " + text);
    ScriptedTriple t;
    std::size_t at = i + 1;
    while (at < semi) {
      t.cops.push_back(num(at));
      while (at < semi && (text[at] == ' ' || text[at] == ',')) ++at;
    }
    at = semi + 1;
    t.robber = num(at);
    out.push_back(std::move(t));
    i = close + 1;
  }
  return out;
}

// The five move lines for Q′ (labels as in the drawing).
inline const std::vector<std::string>& subdivided_cube_lines() {
  static const std::vector<std::string> lines = {
      "<9,5;1> -> <17,5;1> -> <17,5;8> -> <1,6;8>",
      "<9,5;1> -> <17,5;1> -> <17,5;2> -> <1,4;2>",
      "<9,5;2> -> <17,4;2> -> <1,3;2>",
      "<9,5;3> -> <9,4;3> -> <9,4;2> -> <17,3;2>",
      "<9,5;3> -> <9,4;3> -> <9,4;18> -> <10,3;18>",
  };
  return lines;
}

inline std::vector<LineReport> verify_scripted_lines(const Graph& g,
                                                     const std::vector<std::string>& lines,
                                                     int label_offset = 1) {
  RuleSet rules{Variant::Classical, LazySemantics::AtMostOne, 2};
  std::vector<LineReport> out;
  for (const auto& l : lines) {
    auto triples = parse_scripted_line(l, label_offset);
    if (!triples.empty()) rules.k = static_cast<int>(triples[0].cops.size());
    out.push_back(verify_scripted_line(g, rules, triples));
  }
  return out;
}

}  // namespace lazycops
