// Cop numbers of the subdivided cube under both rule sets, then the five
// capture lines for two classical cops.
#include <iostream>

#include "lazycops/construct.hpp"
#include "lazycops/solver.hpp"

using namespace lazycops;

int main() {
  const Graph g = build_subdivided_cube().graph;
  for (auto [v, s] : {std::pair{Variant::Classical, LazySemantics::AtMostOne},
                      std::pair{Variant::OneCopMoves, LazySemantics::AtMostOne},
                      std::pair{Variant::OneCopMoves, LazySemantics::ExactlyOne}}) {
    RuleSet r{v, s, 1};
    auto cn = cop_number(g, r, 4);
    std::cout << describe(r).substr(0, describe(r).find(" k=")) << ": "
              << (cn.value ? std::to_string(*cn.value) : "> 4");
    if (cn.value) {
      std::cout << "  placement";
      for (Vertex c : cn.per_k.back().placement) std::cout << ' ' << c + 1;
    }
    std::cout << '\n';
  }
  const auto& lines = subdivided_cube_lines();
  auto reps = verify_scripted_lines(g, lines);
  for (std::size_t i = 0; i < lines.size(); ++i)
    std::cout << lines[i] << "  " << (reps[i].legal ? "legal" : "ILLEGAL: " + reps[i].reason)
              << (reps[i].forced_capture ? ", capture forced" : "") << '\n';
}
