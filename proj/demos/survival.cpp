// The paper robber on the 49-layer dodecahedron against one adversary,
// printing the dispatch log. Usage: survival [adversary] [rounds] [seed]
#include <iostream>

#include "lazycops/harness.hpp"

using namespace lazycops;

int main(int argc, char** argv) {
  std::string kind = argc > 1 ? argv[1] : "greedy";
  int rounds = argc > 2 ? std::stoi(argv[2]) : 5000;
  std::uint64_t seed = argc > 3 ? std::stoull(argv[3]) : 1;
  auto h = load_graph("layered:49");
  RuleSet rules{Variant::OneCopMoves, LazySemantics::AtMostOne, 3};
  auto cops = make_cops(h, rules, kind, random_start(h.g(), 3, seed), seed);
  PaperRobber robber(*h.arena);
  auto t = run_match(h.g(), h.id, rules, *cops, robber, rounds, false);
  for (const auto& e : robber.context().log)
    if (e.event == "dispatch" || e.event == "arrive" || e.event == "divergence")
      std::cout << e.to_json().dump() << '\n';
  std::cout << to_string(t.outcome) << " after " << t.outcome_round << " rounds, "
            << robber.context().state.centres_reached << " centres reached, " << robber.divergences()
            << " divergences\n";
}
