#include <gtest/gtest.h>

#include <sttt/oracle.hpp>

#include "test_support.hpp"

using namespace sttt;
using namespace sttt::testing;

namespace {

// Plain subset enumeration, for cross-checking the branch-and-bound engine.
Weight enumerate_mwis(const WeightedGraph& g) {
  Weight best = 0;
  for (std::uint32_t m = 0; m < (1u << g.size()); ++m) {
    VertexSet s;
    for (Vertex v = 0; v < g.size(); ++v)
      if (m >> v & 1) s.push_back(v);
    if (g.is_independent(s)) best = std::max(best, g.weight_of(s));
  }
  return best;
}

}  // namespace

TEST(MwisBruteforce, SmallCases) {
  EXPECT_EQ(mwis_bruteforce(cycle_graph(5)).weight, 2);
  const auto empty = mwis_bruteforce(WeightedGraph());
  EXPECT_EQ(empty.weight, 0);
  EXPECT_TRUE(empty.witness.empty());
  const auto p4 = make_graph({1, 9, 9, 1}, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(mwis_bruteforce(p4).weight, 10);
  const auto claw = make_graph({10, 4, 4, 4}, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_EQ(mwis_bruteforce(claw).weight, 12);
}

TEST(MwisBruteforce, AgreesWithEnumeration) {
  for (int iter = 0; iter < 200; ++iter) {
    const auto g = generate_random_graph(1 + iter % 14, 0.1 + 0.08 * (iter % 10), 300 + iter, 30);
    const auto r = mwis_bruteforce(g);
    EXPECT_EQ(r.weight, enumerate_mwis(g)) << iter;
    EXPECT_TRUE(g.is_independent(r.witness));
    EXPECT_EQ(g.weight_of(r.witness), r.weight);
  }
}

TEST(MwisBruteforce, DoublingAndAdditivity) {
  for (int iter = 0; iter < 40; ++iter) {
    const auto a = generate_random_graph(15, 0.25, 10 + iter);
    const auto b = generate_random_graph(12, 0.3, 90 + iter);
    std::vector<Weight> doubled = a.weights();
    for (auto& w : doubled) w *= 2;
    const WeightedGraph a2(doubled, a.edges());
    EXPECT_EQ(mwis_bruteforce(a2).weight, 2 * mwis_bruteforce(a).weight);
    EXPECT_EQ(mwis_bruteforce(disjoint_union(a, b)).weight, mwis_bruteforce(a).weight + mwis_bruteforce(b).weight);
  }
}

TEST(MwisBruteforce, FortyVertexInstances) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate_random_instance(40, 4, 2, seed);
    const auto r = mwis_bruteforce(g);
    EXPECT_TRUE(g.is_independent(r.witness));
    EXPECT_EQ(g.weight_of(r.witness), r.weight);
  }
}

TEST(MwisBruteforce, BudgetGuards) {
  EXPECT_THROW(mwis_bruteforce(path_graph(41)), CapacityError);
  OracleBudget tiny;
  tiny.node_cap = 3;
  EXPECT_THROW(mwis_bruteforce(generate_random_graph(20, 0.3, 1), tiny), CapacityError);
}

TEST(BruteForceBorder, HandCases) {
  const auto single = make_graph({5}, {});
  const auto p1 = brute_force_border(single, {0});
  EXPECT_EQ(p1[0], Score(0));
  EXPECT_EQ(p1[1], Score(5));

  const auto edge = make_graph({2, 3}, {{0, 1}});
  const auto p2 = brute_force_border(edge, {0, 1});
  EXPECT_EQ(p2[0], Score(0));
  EXPECT_EQ(p2[1], Score(2));
  EXPECT_EQ(p2[2], Score(3));
  EXPECT_EQ(p2[3], Score::neg_inf());

  const auto p4 = make_graph({1, 9, 9, 1}, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(brute_force_border(p4, {})[0], Score(10));
}

TEST(BruteForceBorder, Guards) {
  VertexSet many;
  for (Vertex v = 0; v < 21; ++v) many.push_back(v);
  EXPECT_THROW(brute_force_border(path_graph(25), many), CapacityError);
  EXPECT_THROW(brute_force_border(path_graph(3), {5}), InputError);
}

TEST(BruteForceBorder, ProfileSanityAndWitnesses) {
  Rng rng(12);
  for (int iter = 0; iter < 80; ++iter) {
    const auto g = generate_random_graph(10, 0.3, 700 + iter, 20);
    VertexSet t = all_vertices(g);
    shuffle_in_place(t, rng);
    t.resize(uniform_between(rng, 0, 5));
    t = normalized(t);
    const auto p = brute_force_border(g, t);
    EXPECT_TRUE(check_profile_sanity(g, p).ok());
    const auto by_bit = terminal_vertices(g, p);
    for (Mask m = 0; m < p.size(); ++m) {
      const VertexSet chosen = vertices_of_mask(by_bit, m);
      const auto w = border_cell_witness(g, t, chosen);
      ASSERT_EQ(w.has_value(), p[m].is_finite());
      if (!w) continue;
      EXPECT_TRUE(g.is_independent(*w));
      EXPECT_EQ(set_intersection(*w, t), chosen);
      EXPECT_EQ(Score(g.weight_of(*w)), p[m]);
    }
  }
}

TEST(VerifySolution, DetectsPerturbation) {
  const auto g = generate_random_graph(9, 0.35, 5, 20);
  const VertexSet t{1, 4, 6};
  auto p = brute_force_border(g, t);
  EXPECT_TRUE(verify_solution(g, t, p).ok());
  Mask target = 0;
  p.set(target, Score(p[target].value() + 1));
  const Report r = verify_solution(g, t, p);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_NE(r.violations[0].detail.find("mask 0"), std::string::npos);
  const auto empty = brute_force_border(g, {});
  EXPECT_EQ(empty[0], Score(mwis_bruteforce(g).weight));
}

TEST(BorderProfile, CapsAndDuplicates) {
  std::vector<Label> labels(27);
  for (int i = 0; i < 27; ++i) labels[i] = i;
  EXPECT_THROW(BorderProfile{labels}, CapacityError);
  EXPECT_NO_THROW(BorderProfile(std::vector<Label>(labels.begin(), labels.begin() + 20)));
  EXPECT_THROW(BorderProfile(std::vector<Label>{1, 1}), InputError);
  BorderProfile p({9, 3});
  EXPECT_EQ(p.terminals(), (std::vector<Label>{3, 9}));
  EXPECT_EQ(p.bit_of(9), 1);
  EXPECT_EQ(p.mask_of(std::vector<Label>{9}), Mask{2});
}

TEST(BorderProfile, TextRoundTrip) {
  const auto g = make_graph({2, 3, 4}, {{0, 1}});
  const auto p = brute_force_border(g, {0, 1, 2});
  const std::string text = write_profile(p);
  EXPECT_NE(text.find("3 -inf"), std::string::npos);
  EXPECT_EQ(read_profile(text), p);
  EXPECT_THROW(read_profile("c terminals 1\n0 1\n"), ParseError);
}

TEST(ProfileSanity, FlagsBadCells) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  auto p = brute_force_border(g, {0, 1});
  p.set(3, Score(1));
  p.set(1, Score(1));
  EXPECT_EQ(check_profile_sanity(g, p).violations.size(), 2u);
}
