#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "lazycops/harness.hpp"

using namespace lazycops;
using json = nlohmann::ordered_json;

namespace {

struct Common {
  std::string graph = "q-prime";
  std::string variant = "classical";
  std::string semantics = "at-most-one";
  int cops = 1;
  int max_rounds = 1000;
  std::uint64_t seed = 1;
  std::string out;

  RuleSet rules() const { return {parse_variant(variant), parse_semantics(semantics), cops}; }
};

void add_common(CLI::App* c, Common& o, bool game) {
  c->add_option("--graph", o.graph, "q-prime | dodecahedron | layered:L");
  c->add_option("--out", o.out, "output path");
  if (!game) return;
  c->add_option("--variant", o.variant, "classical | lazy")->check(CLI::IsMember({"classical", "lazy"}));
  c->add_option("--semantics", o.semantics, "at-most-one | exactly-one")
      ->check(CLI::IsMember({"at-most-one", "exactly-one"}));
  c->add_option("--cops", o.cops, "number of cops");
  c->add_option("--max-rounds", o.max_rounds, "round bound");
  c->add_option("--seed", o.seed, "seed");
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << j.dump() << '\n';
}

std::vector<Vertex> parse_list(const std::string& s) {
  std::vector<Vertex> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(static_cast<Vertex>(std::stoul(tok)));
  return out;
}

int cmd_build(const Common& o) {
  if (o.out.empty()) throw std::invalid_argument("build needs --out DIR");
  auto h = load_graph(o.graph);
  std::filesystem::create_directories(o.out);
  std::ofstream edges(o.out + "/edges.txt");
  write_edge_list(edges, h.g());
  if (h.arena) {
    std::ofstream lm(o.out + "/landmarks.txt");
    write_landmarks(lm, h.arena->landmarks());
    std::ofstream fa(o.out + "/faces.txt");
    write_face_addresses(fa, h.arena->geo());
  }
  std::cout << json{{"graph", h.id}, {"vertices", h.g().num_vertices()}, {"edges", h.g().num_edges()}}.dump()
            << '\n';
  return 0;
}

int cmd_verify(const Common& o, const std::string& edges) {
  int L = parse_layers(o.graph);
  if (L < 1) throw std::invalid_argument("verify needs a layered:L graph");
  LayeredDodecahedron d(L);
  ConstructionReport r;
  if (edges.empty()) {
    r = validate_construction(d);
  } else {
    std::ifstream in(edges);
    if (!in) throw std::runtime_error("cannot read " + edges);
    r = validate_construction(read_edge_list(in), d);
  }
  std::cout << format_report(r);
  return r.passed() ? 0 : 1;
}

int cmd_solve(const Common& o) {
  auto h = load_graph(o.graph);
  auto rules = o.rules();
  auto cn = cop_number(h.g(), rules, rules.k);
  json j;
  j["graph"] = h.id;
  j["variant"] = to_string(rules.variant);
  j["semantics"] = to_string(rules.lazy);
  j["cop_number"] = cn.value ? json(*cn.value) : json(nullptr);
  j["k_max"] = rules.k;
  j["per_k"] = json::array();
  for (const auto& r : cn.per_k) j["per_k"].push_back(to_json(r, h.id));
  emit(j, o.out);
  return 0;
}

int cmd_match(const Common& o, const std::string& cop_kind, const std::string& robber_kind,
              const std::string& start, const std::string& replay_path) {
  if (!replay_path.empty()) {
    std::ifstream in(replay_path);
    if (!in) throw std::runtime_error("cannot read " + replay_path);
    auto j = nlohmann::json::parse(in);
    if (j.contains("transcript")) j = j.at("transcript");
    Transcript t = transcript_from_json(j);
    auto h = load_graph(t.graph_id);
    GameConfig c = replay(h.g(), t);
    emit(json{{"graph", t.graph_id},
              {"moves", t.moves.size()},
              {"cop_positions", c.cops},
              {"robber", c.robber},
              {"round", c.round},
              {"turn", to_string(c.turn)},
              {"captured", c.captured}},
         o.out);
    return 0;
  }
  auto h = load_graph(o.graph);
  MatchSpec s;
  s.graph = o.graph;
  s.rules = o.rules();
  s.cops = cop_kind;
  s.robber = robber_kind;
  s.start = parse_list(start);
  s.max_rounds = o.max_rounds;
  s.seed = o.seed;
  auto r = run_spec(h, s);
  json out;
  out["outcome"] = {{"kind", to_string(r.transcript.outcome)}, {"round", r.transcript.outcome_round}};
  if (!r.transcript.forfeit_reason.empty()) out["outcome"]["reason"] = r.transcript.forfeit_reason;
  if (!r.robber_log.is_null()) {
    out["coverage"] = r.robber_log["coverage"];
    out["divergences"] = r.robber_log["divergences"];
    out["certificate_violations"] = r.robber_log["guarantee_violations"];
  }
  std::cout << out.dump() << '\n';
  if (!o.out.empty()) emit(to_json(r.transcript), o.out);
  return 0;
}

int cmd_tournament(const Common& o, int placements, std::vector<std::string> adversaries) {
  auto h = load_graph(o.graph);
  if (!h.arena || h.arena->layers() != Arena::kLayers)
    throw std::invalid_argument("tournament needs layered:49");
  if (adversaries.empty()) {
    adversaries = {"greedy"};
    for (int s = 1; s <= 5; ++s) adversaries.push_back("random-walk/" + std::to_string(s));
    for (const char* k : {"center-guard", "encircle", "mirror-prober", "scripted:all"}) adversaries.push_back(k);
  }
  auto rep = run_tournament(*h.arena, adversaries, placements, o.max_rounds, o.seed, [](const auto& e) {
    std::cerr << e.adversary << ' ' << to_string(e.outcome) << '@' << e.round << " div=" << e.divergences
              << '\n';
  });
  auto j = rep.to_json();
  emit(j, o.out);
  if (!o.out.empty())
    std::cout << json{{"outcomes", j["outcomes"]}, {"divergences", j["divergences"]},
                      {"certificate_violations", j["certificate_violations"]}}
                     .dump()
              << '\n';
  return rep.outcomes.count("captured") || rep.outcomes.count("forfeit") ? 1 : 0;
}

int cmd_serve(const std::string& host, int port) {
  SessionStore store;
  httplib::Server srv;
  for (const char* op : {"new_session", "state", "cop_move", "robber_auto", "transcript"}) {
    std::string name = op;
    srv.Post("/" + name, [&store, name](const httplib::Request& req, httplib::Response& res) {
      json out;
      try {
        auto body = req.body.empty() ? nlohmann::json::object() : nlohmann::json::parse(req.body);
        out = store.handle(name, body);
      } catch (const std::exception& e) {
        out = {{"ok", false}, {"error", std::string("bad request: ") + e.what()}};
      }
      res.status = out.value("ok", false) ? 200 : 400;
      res.set_content(out.dump(), "application/json");
    });
  }
  if (port == 0) {
    port = srv.bind_to_any_port(host);
    if (port < 0) throw std::runtime_error("cannot bind");
  } else if (!srv.bind_to_port(host, port)) {
    throw std::runtime_error("port " + std::to_string(port) + " is busy");
  }
  std::cout << "listening on " << host << ':' << port << std::endl;
  return srv.listen_after_bind() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("lazy cops and robber: graphs, solver, matches, play server");
  app.require_subcommand(1);
  Common o;

  auto* build = app.add_subcommand("build", "write edge list, landmarks and face addresses");
  add_common(build, o, false);

  std::string edges;
  auto* verify = app.add_subcommand("verify", "check a layered dodecahedron");
  add_common(verify, o, false);
  verify->add_option("--edges", edges, "check this edge list against the construction instead");

  auto* solve = app.add_subcommand("solve", "cop number up to --cops");
  add_common(solve, o, true);

  std::string cop_kind = "greedy", robber_kind = "solver", start, replay_path;
  auto* match = app.add_subcommand("match", "play one match, or replay a transcript");
  add_common(match, o, true);
  match->add_option("--cop-kind", cop_kind, "fixed | greedy | solver | random-walk | center-guard | "
                                            "encircle | mirror-prober | scripted:<label>");
  match->add_option("--robber-kind", robber_kind, "paper | stay | solver");
  match->add_option("--start", start, "comma-separated cop start vertices");
  match->add_option("--replay", replay_path, "transcript to replay");

  int placements = 20;
  std::vector<std::string> adversaries;
  auto* tour = app.add_subcommand("tournament", "paper robber against the adversary battery");
  add_common(tour, o, true);
  tour->add_option("--placements", placements, "start placements per adversary");
  tour->add_option("--adversary", adversaries, "adversary (repeatable; default: full battery)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "play protocol over HTTP (POST JSON)");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port; 0 picks a free one");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*build) return cmd_build(o);
    if (*verify) return cmd_verify(o, edges);
    if (*solve) return cmd_solve(o);
    if (*match) return cmd_match(o, cop_kind, robber_kind, start, replay_path);
    if (*tour) return cmd_tournament(o, placements, adversaries);
    if (*serve) return cmd_serve(host, port);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
