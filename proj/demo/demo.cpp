// Walk-through of the library on small generated instances.
#include <iostream>

#include <sttt/sttt.hpp>

using namespace sttt;

namespace {

void show(const char* title, const WeightedGraph& g, const MwisOutcome& out, const RecursionTrace& trace) {
  std::cout << "== " << title << " (n=" << g.size() << ", m=" << g.num_edges() << ", max degree " << g.max_degree()
            << ")\n";
  if (const auto* c = std::get_if<SubdividedClawWitness>(&out)) {
    std::cout << "found an induced subdivided claw centred at " << c->center << '\n';
    return;
  }
  const auto& a = std::get<MwisAnswer>(out);
  std::cout << "value " << a.weight << ", oracle " << mwis_bruteforce(g).weight << '\n';
  if (a.witness) {
    std::cout << "witness";
    for (Vertex v : *a.witness) std::cout << ' ' << v;
    std::cout << '\n';
  }
  std::cout << trace.calls().size() << " calls, " << trace.leaves() << " leaves, depth " << trace.max_depth() << '\n';
  for (std::size_t i = 0; i < trace.lines().size() && i < 6; ++i) std::cout << "  " << trace.lines()[i] << '\n';
}

}  // namespace

int main() {
  {
    const WeightedGraph g = generate_random_instance(40, 3, 2, 11);
    DegreeSolverConfig cfg;
    cfg.ell_scale = 0.0038;
    RecursionTrace trace;
    show("bounded degree", g, mwis(g, cfg, true, &trace), trace);
  }
  {
    const WeightedGraph g = generate_biclique_free_instance(36, 5, 2, 11);
    BicliqueSolverConfig cfg;
    cfg.ell_scale = 0.001;
    cfg.leaf_cap_override = 16;
    RecursionTrace trace;
    show("no K_{2,2} subgraph", g, mwis(g, cfg, true, &trace), trace);
  }
  {
    // Border profile on four terminals of a cycle.
    const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {0, 7}};
    const WeightedGraph g(std::vector<Weight>{3, 1, 4, 1, 5, 9, 2, 6}, edges);
    DegreeSolverConfig cfg;
    cfg.ell_scale = 0.001;
    cfg.leaf_cap_override = 4;
    const auto out = solve_degree(g, {0, 2, 4, 6}, cfg);
    std::cout << "== border profile of C_8 on terminals 0 2 4 6\n" << write_profile(std::get<BorderProfile>(out));
  }
  {
    const WeightedGraph g = generate_subdivided_claw(2, 2, 2);
    DegreeSolverConfig cfg;
    cfg.ell_scale = 0.001;
    cfg.leaf_cap_override = 1;
    RecursionTrace trace;
    show("S_{2,2,2} itself", g, mwis(g, cfg, false, &trace), trace);
  }
  return 0;
}
