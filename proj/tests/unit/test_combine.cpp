#include <gtest/gtest.h>

#include <sttt/combine.hpp>
#include <sttt/patterns.hpp>

#include "test_support.hpp"

using namespace sttt;
using namespace sttt::testing;

namespace {

Esd single_edge_esd() {
  std::vector<Edge> he{{0, 1}};
  Esd d(2, he);
  d.set_edge_sets(0, 1, {0, 1}, {0}, {1});
  return d;
}

// Every independent subset of g, by enumeration (n small).
std::vector<VertexSet> independent_sets(const WeightedGraph& g) {
  std::vector<VertexSet> out;
  for (std::uint32_t m = 0; m < (1u << g.size()); ++m) {
    VertexSet s;
    for (Vertex v = 0; v < g.size(); ++v)
      if (m >> v & 1) s.push_back(v);
    if (g.is_independent(s)) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST(CombineEsd, TrivialDecompositionReturnsParticleProfile) {
  const auto g = generate_random_graph(8, 0.4, 4, 20);
  const VertexSet t{0, 3, 5};
  const Esd d = trivial_esd(g);
  const auto profiles = particle_profiles(g, d, t);
  EXPECT_EQ(combine_esd(g, t, d, profiles), profiles[0]);
}

TEST(CombineEsd, SingleEdgeCaseOne) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  const Esd d = single_edge_esd();
  const auto profiles = particle_profiles(g, d, {});
  Combiner c(g, {}, d, profiles);
  const auto plan = c.plan(0);
  EXPECT_EQ(plan.base_weight, 0);
  ASSERT_EQ(plan.aux.edges().size(), 3u);
  EXPECT_EQ(plan.aux.edges()[0].weight, 2);
  EXPECT_EQ(plan.aux.edges()[1].weight, 3);
  EXPECT_EQ(plan.aux.edges()[2].weight, 3);
  EXPECT_EQ(c.value(plan), 3);
  EXPECT_EQ(c.run()[0], brute_force_border(g, {})[0]);
}

TEST(CombineEsd, SingleEdgeReconstruction) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  const Esd d = single_edge_esd();
  const auto profiles = particle_profiles(g, d, {});
  Combiner c(g, {}, d, profiles);
  const auto plan = c.plan(0);
  const auto fn = particle_witnesses(g, d, {});
  EXPECT_TRUE(c.reconstruct_witness(plan, {}, fn).empty());
  const VertexSet w = c.reconstruct_witness(plan, {1}, fn);
  EXPECT_EQ(w, VertexSet{1});
  EXPECT_EQ(g.weight_of(w), 3);
  EXPECT_THROW(c.reconstruct_witness(plan, {0, 1}, fn), InputError);
}

TEST(CombineEsd, MissingProfileIsContractViolation) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  const Esd d = single_edge_esd();
  auto profiles = particle_profiles(g, d, {});
  profiles.pop_back();
  EXPECT_THROW(combine_esd(g, {}, d, profiles), ContractViolation);
  auto wrong = particle_profiles(g, d, {0});
  EXPECT_THROW(combine_esd(g, {}, d, wrong), ContractViolation);
}

TEST(CombineEsd, NegativeWeightSignalsBadProfiles) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  const Esd d = single_edge_esd();
  auto profiles = particle_profiles(g, d, {});
  profiles[0].set(0, Score(50));  // A_x asks for more than A^x can hold
  EXPECT_THROW(combine_esd(g, {}, d, profiles), InvariantFailure);
}

TEST(CombineEsd, AgreesWithBruteForceOnRandomDecompositions) {
  Rng rng(31337);
  InvariantStats stats;
  for (int iter = 0; iter < 300; ++iter) {
    const auto inst = random_esd_instance(rng, 14, 5, 20);
    const auto profiles = particle_profiles(inst.g, inst.d, inst.terminals);
    const auto got = combine_esd(inst.g, inst.terminals, inst.d, profiles, &stats);
    const Report r = verify_solution(inst.g, inst.terminals, got);
    ASSERT_TRUE(r.ok()) << "iteration " << iter << "\n" << r.to_string() << write_esd(inst.d);
    EXPECT_TRUE(check_profile_sanity(inst.g, got).ok());
  }
  EXPECT_GT(stats.aux_weight, 0u);
}

TEST(CombineEsd, DenseCrossEdges) {
  Rng rng(4242);
  for (int iter = 0; iter < 150; ++iter) {
    const auto inst = random_esd_instance(rng, 12, 4, 20, 4, 0.9);
    const auto profiles = particle_profiles(inst.g, inst.d, inst.terminals);
    const auto got = combine_esd(inst.g, inst.terminals, inst.d, profiles);
    ASSERT_TRUE(verify_solution(inst.g, inst.terminals, got).ok()) << iter;
  }
}

// For every independent I: the derived M is a matching with w(I) <= a_0 + w'(M).
TEST(CombineMatchingRoles, DerivedMatchingBoundsEveryIndependentSet) {
  Rng rng(555);
  for (int iter = 0; iter < 120; ++iter) {
    const auto inst = random_esd_instance(rng, 10, 4, 20);
    const auto profiles = particle_profiles(inst.g, inst.d, inst.terminals);
    Combiner c(inst.g, inst.terminals, inst.d, profiles);
    const auto by_bit = c.terminal_by_bit();
    for (const VertexSet& in : independent_sets(inst.g)) {
      Mask m = 0;
      for (std::size_t b = 0; b < by_bit.size(); ++b)
        if (contains(in, by_bit[b])) m |= Mask{1} << b;
      const auto plan = c.plan(m);
      const auto matching = c.derive_matching(plan, in);
      ASSERT_TRUE(matching.has_value()) << "iteration " << iter;
      Weight bound = plan.base_weight;
      for (auto id : *matching) bound += plan.aux.edges()[id].weight;
      ASSERT_LE(inst.g.weight_of(in), bound) << "iteration " << iter;
    }
  }
}

// For every matching M of every plan: the reconstruction is independent, traces
// I_T exactly and weighs at least a_0 + w'(M).
TEST(CombineMatchingRoles, EveryMatchingReconstructs) {
  Rng rng(777);
  InvariantStats stats;
  for (int iter = 0; iter < 120; ++iter) {
    const auto inst = random_esd_instance(rng, 12, 4, 20);
    const auto profiles = particle_profiles(inst.g, inst.d, inst.terminals);
    Combiner c(inst.g, inst.terminals, inst.d, profiles, &stats);
    const auto fn = particle_witnesses(inst.g, inst.d, inst.terminals);
    for (Mask m : independent_masks(inst.g, c.terminal_by_bit())) {
      const auto plan = c.plan(m);
      if (plan.aux.size() > 16) continue;
      for_each_matching(plan.aux, [&](const std::vector<std::size_t>& mm) {
        std::vector<std::size_t> sorted = mm;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_NO_THROW(c.reconstruct_witness(plan, sorted, fn)) << "iteration " << iter;
      });
    }
  }
  EXPECT_GT(stats.witness, 0u);
}

TEST(CombineEsd, LineGraphGivesMaximumMatching) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int m = 3 + static_cast<int>(seed % 10);
    const auto base = generate_graph_with_edges(7, m, seed);
    Rng rng(seed);
    const auto w = detail::random_weights(rng, static_cast<int>(base.num_edges()), 1, 30);
    const auto lg = line_graph(base, w);
    const Esd d = line_graph_esd(base);
    const auto profiles = particle_profiles(lg, d, {});
    const Weight got = combine_esd(lg, {}, d, profiles)[0].value();

    AuxGraph aux(base.size());
    const auto edges = base.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) aux.add_edge(edges[i].first, edges[i].second, w[i]);
    EXPECT_EQ(got, max_weight_matching(aux).weight) << seed;
  }
}
