#include <gtest/gtest.h>

#include <sttt/solver_biclique.hpp>

#include "test_support.hpp"

namespace sttt {
namespace {

using testing::cycle_graph;
using testing::make_graph;
using testing::path_graph;

BicliqueSolverConfig forced(int leaf_cap, int k = 2) {
  BicliqueSolverConfig cfg;
  cfg.k = k;
  cfg.ell_scale = 0.001;
  cfg.leaf_cap_override = leaf_cap;
  cfg.check_profiles = true;
  return cfg;
}

Weight value_of(const MwisOutcome& o) { return std::get<MwisAnswer>(o).weight; }

TEST(ChooseSinkNode, SingleBag) {
  const WeightedGraph g = cycle_graph(6);
  const BagContext ctx = choose_sink_node(g, single_bag_td(g), all_vertices(g), 2);
  EXPECT_EQ(ctx.node, 0);
  EXPECT_EQ(ctx.bag, all_vertices(g));
  EXPECT_TRUE(ctx.components.empty());
  EXPECT_TRUE(ctx.high.empty());
}

TEST(ChooseSinkNode, PointsTowardMoreOfU) {
  // Path 0-1-2-3-4 with bags {0,1} {1,2} {2,3} {3,4}.
  const WeightedGraph g = path_graph(5);
  const TreeDecomposition td({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}});
  InvariantStats stats;
  const BagContext all = choose_sink_node(g, td, all_vertices(g), 2, &stats);
  // Edges 0-1 and 2-3 point inward; the middle edge ties and points to node 1.
  EXPECT_EQ(all.node, 1);
  EXPECT_EQ(all.components, (std::vector<VertexSet>{{0}, {3, 4}}));
  EXPECT_EQ(all.neighborhoods, (std::vector<VertexSet>{{1}, {2}}));
  EXPECT_EQ(stats.bag, 1u);
  const BagContext right = choose_sink_node(g, td, {3, 4}, 2);
  EXPECT_EQ(right.node, 3);
  EXPECT_EQ(right.components, (std::vector<VertexSet>{{0, 1, 2}}));
}

TEST(ChooseSinkNode, FindsHighDegreeVertices) {
  // A star with six leaves in one bag: the centre exceeds 2k(k-1) = 4.
  std::vector<Edge> e;
  for (Vertex v = 1; v <= 6; ++v) e.emplace_back(0, v);
  const WeightedGraph g(std::vector<Weight>(7, 1), e);
  const BagContext ctx = choose_sink_node(g, single_bag_td(g), all_vertices(g), 2);
  EXPECT_EQ(ctx.high, (VertexSet{0}));
}

TEST(ChooseSinkNode, CountsCliqueEdgesOfAdhesions) {
  // Bag {0,1,2}; components {3} and {4} each see {0,1} or {1,2}.
  const WeightedGraph g = make_graph({1, 1, 1, 1, 1}, {{0, 3}, {1, 3}, {1, 4}, {2, 4}});
  const TreeDecomposition td({{0, 1, 2}, {0, 1, 3}, {1, 2, 4}}, {{0, 1}, {0, 2}});
  ASSERT_TRUE(validate_tree_decomposition(g, td).ok());
  const BagContext ctx = choose_sink_node(g, td, {0, 1, 2}, 3);
  EXPECT_EQ(ctx.node, 0);
  EXPECT_EQ(ctx.neighborhoods, (std::vector<VertexSet>{{0, 1}, {1, 2}}));
  EXPECT_TRUE(ctx.high.empty());
  EXPECT_THROW(choose_sink_node(g, td, {0, 1, 2}, 2), ContractViolation);
}

TEST(ClassifyComponents, EmptyXTouchesNothing) {
  const WeightedGraph g = path_graph(5);
  const TreeDecomposition td({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}});
  const BagContext ctx = choose_sink_node(g, td, all_vertices(g), 2);
  const Classification cl = classify_components(g, ctx, all_vertices(g), {}, 0, 2);
  EXPECT_TRUE(cl.y.empty());
  EXPECT_TRUE(cl.z.empty());
  EXPECT_EQ(cl.dirty, (std::vector<char>{0, 0}));
  EXPECT_EQ(cl.touched, (std::vector<char>{0, 0}));
}

TEST(ClassifyComponents, XInsideComponent) {
  // Bag {1,2}; X = {4} lies in component {3,4} whose neighbourhood is {2}.
  const WeightedGraph g = path_graph(5);
  const TreeDecomposition td({{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {{0, 1}, {1, 2}, {2, 3}});
  const BagContext ctx = choose_sink_node(g, td, all_vertices(g), 2);
  ASSERT_EQ(ctx.node, 1);
  const Classification cl = classify_components(g, ctx, all_vertices(g), {3, 4}, 1, 2);
  EXPECT_EQ(cl.dirty, (std::vector<char>{0, 1}));
  EXPECT_EQ(cl.y, (VertexSet{2}));
  // Component {0} has N = {1}, which misses Y.
  EXPECT_EQ(cl.touched, (std::vector<char>{0, 1}));
  EXPECT_EQ(cl.z, (VertexSet{1, 2}));
}

TEST(SolveBiclique, TrivialGraphs) {
  EXPECT_EQ(value_of(mwis(WeightedGraph(), BicliqueSolverConfig{})), 0u);
  EXPECT_EQ(value_of(mwis(make_graph({7}, {}), BicliqueSolverConfig{})), 7u);
  EXPECT_EQ(value_of(mwis(cycle_graph(5), forced(2))), 2u);
}

TEST(SolveBiclique, RejectsBadConfig) {
  BicliqueSolverConfig cfg;
  cfg.k = 1;
  EXPECT_THROW(mwis(cycle_graph(5), cfg), InputError);
  cfg = {};
  cfg.ell_scale = 0;
  EXPECT_THROW(mwis(cycle_graph(5), cfg), InputError);
  EXPECT_THROW(solve_biclique(cycle_graph(5), {5}, {}), InputError);
}

TEST(SolveBiclique, ReportsClaw) {
  const WeightedGraph g = generate_subdivided_claw(2, 2, 2);
  const auto out = solve_biclique(g, {}, forced(1));
  ASSERT_TRUE(std::holds_alternative<SubdividedClawWitness>(out));
  EXPECT_TRUE(is_induced_subdivided_claw(g, std::get<SubdividedClawWitness>(out)));
}

TEST(SolveBiclique, RecursesOnLongCycle) {
  RecursionTrace trace;
  InvariantStats stats;
  const auto out = mwis(cycle_graph(24, 5), forced(6), true, &trace, &stats);
  ASSERT_TRUE(std::holds_alternative<MwisAnswer>(out));
  EXPECT_EQ(std::get<MwisAnswer>(out).weight, 60u);
  EXPECT_TRUE(trace.recursed());
  EXPECT_FALSE(trace.branches().empty());
  EXPECT_EQ(trace.lines().front().rfind("call depth=0 n=24 |T|=0 U=V", 0), 0u);
  EXPECT_GT(stats.bag, 0u);
  EXPECT_GT(stats.y_bound, 0u);
  EXPECT_GT(stats.witness, 0u);
}

TEST(SolveBiclique, MatchesOracleOnGeneratedInstances) {
  int recursed = 0;
  for (std::uint64_t seed = 1; seed <= 16; ++seed) {
    const int n = 18 + static_cast<int>(seed % 7);
    const WeightedGraph g = generate_biclique_free_instance(n, 5, 2, seed);
    RecursionTrace trace;
    InvariantStats stats;
    MwisOutcome out;
    try {
      out = mwis(g, forced(8, 3), true, &trace, &stats);
    } catch (const CapacityError& e) {
      ADD_FAILURE() << "seed " << seed << ": " << e.what();
      continue;
    }
    ASSERT_TRUE(std::holds_alternative<MwisAnswer>(out)) << "seed " << seed;
    const auto& a = std::get<MwisAnswer>(out);
    EXPECT_EQ(a.weight, mwis_bruteforce(g).weight) << "seed " << seed;
    ASSERT_TRUE(a.witness.has_value());
    EXPECT_TRUE(g.is_independent(*a.witness));
    EXPECT_EQ(g.weight_of(*a.witness), a.weight);
    recursed += trace.recursed();
  }
  EXPECT_EQ(recursed, 16);
}

TEST(SolveBiclique, FullProfileMatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const WeightedGraph g = generate_biclique_free_instance(20, 5, 2, 50 + seed);
    Rng rng(seed);
    VertexSet terms = all_vertices(g);
    shuffle_in_place(terms, rng);
    terms.resize(1 + seed % 4);
    terms = normalized(terms);
    const auto out = solve_biclique(g, terms, forced(8, 3));
    ASSERT_TRUE(std::holds_alternative<BorderProfile>(out));
    EXPECT_TRUE(verify_solution(g, terms, std::get<BorderProfile>(out)).ok()) << "seed " << seed;
  }
}

TEST(SolveBiclique, CellWitnessesAreOptimal) {
  const WeightedGraph g = generate_biclique_free_instance(22, 5, 2, 3);
  const VertexSet terms{0, 6, 11, 17};
  BicliqueSolver solver(g, forced(8, 3));
  const BorderProfile p = solver.profile(g, terms);
  const auto by_bit = terminal_vertices(g, p);
  for (Mask m = 0; m < p.size(); ++m) {
    if (!p[m].is_finite()) continue;
    const VertexSet chosen = vertices_of_mask(by_bit, m);
    const VertexSet w = solver.witness(g, terms, chosen);
    EXPECT_TRUE(g.is_independent(w));
    EXPECT_EQ(set_intersection(w, terms), chosen);
    EXPECT_EQ(Score(g.weight_of(w)), p[m]);
  }
}

TEST(SolveBiclique, DisjointUnionIsAdditive) {
  const WeightedGraph a = generate_biclique_free_instance(14, 4, 2, 8);
  const WeightedGraph b = generate_biclique_free_instance(12, 4, 2, 9);
  const WeightedGraph u = testing::disjoint_union(a, b);
  const auto cfg = forced(6, 3);
  EXPECT_EQ(value_of(mwis(u, cfg)), value_of(mwis(a, cfg)) + value_of(mwis(b, cfg)));
}

TEST(SolveBiclique, Deterministic) {
  const WeightedGraph g = generate_biclique_free_instance(30, 5, 2, 4);
  RecursionTrace a, b;
  mwis(g, forced(8, 3), false, &a);
  mwis(g, forced(8, 3), false, &b);
  EXPECT_EQ(a.lines(), b.lines());
}

}  // namespace
}  // namespace sttt
