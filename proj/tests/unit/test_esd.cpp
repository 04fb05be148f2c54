#include <gtest/gtest.h>

#include <sttt/esd.hpp>
#include <sttt/patterns.hpp>

#include "test_support.hpp"

using namespace sttt;
using namespace sttt::testing;

namespace {

// H = edge xy, eta(xy) = {u, v}, eta(xy, x) = {u}, eta(xy, y) = {v}.
Esd single_edge_esd() {
  std::vector<Edge> he{{0, 1}};
  Esd d(2, he);
  d.set_edge_sets(0, 1, {0, 1}, {0}, {1});
  return d;
}

bool has_property(const Report& r, const std::string& prop) {
  for (const auto& v : r.violations)
    if (v.property == prop) return true;
  return false;
}

}  // namespace

TEST(ValidateEsd, TrivialIsValidAndRigid) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate_random_graph(8, 0.4, seed);
    EXPECT_TRUE(validate_esd(g, trivial_esd(g), true).ok());
  }
}

TEST(ValidateEsd, SingleEdge) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  EXPECT_TRUE(validate_esd(g, single_edge_esd(), true).ok());
  std::vector<Edge> he{{0, 1}};
  Esd broken(2, he);
  broken.set_edge_sets(0, 1, {1}, {}, {1});
  const Report r = validate_esd(g, broken);
  EXPECT_TRUE(has_property(r, "P1"));
  EXPECT_NE(r.to_string().find("vertex 0"), std::string::npos);
}

TEST(ValidateEsd, EmptyGraphHasEmptyPattern) {
  const WeightedGraph g;
  const Esd d = trivial_esd(g);
  EXPECT_EQ(d.pattern().size(), 0);
  EXPECT_TRUE(validate_esd(g, d, true).ok());
}

TEST(ValidateEsd, DetectsP2AndP3) {
  // Star H centred at 0 with two leaves; interfaces at 0 must be complete.
  std::vector<Edge> he{{0, 1}, {0, 2}};
  Esd d(3, he);
  d.set_edge_sets(0, 1, {0}, {0}, {0});
  d.set_edge_sets(0, 2, {1}, {1}, {1});
  const auto apart = make_graph({1, 1}, {});
  EXPECT_TRUE(has_property(validate_esd(apart, d), "P2"));
  const auto joined = make_graph({1, 1}, {{0, 1}});
  EXPECT_TRUE(validate_esd(joined, d, true).ok());

  // An edge between the interiors of two different pattern edges.
  std::vector<Edge> he2{{0, 1}, {2, 3}};
  Esd d2(4, he2);
  d2.set_edge_sets(0, 1, {0}, {}, {});
  d2.set_edge_sets(2, 3, {1}, {}, {});
  EXPECT_TRUE(has_property(validate_esd(joined, d2), "P3"));
  EXPECT_TRUE(has_property(validate_esd(apart, d2, true), "rigid"));
}

TEST(ValidateEsd, RandomInstancesAreValid) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto inst = random_esd_instance(rng, 14, 5, 20);
    const Report r = validate_esd(inst.g, inst.d);
    ASSERT_TRUE(r.ok()) << r.to_string();
    std::size_t total = 0;
    const auto& h = inst.d.pattern();
    for (Vertex x = 0; x < h.size(); ++x) total += inst.d.vertex_set(x).size();
    for (auto [x, y] : h.edges()) total += inst.d.edge_set(x, y).size();
    for (const auto& t : inst.d.triangles()) total += inst.d.triangle_set(t[0], t[1], t[2]).size();
    EXPECT_EQ(total, static_cast<std::size_t>(inst.g.size()));
  }
}

TEST(Particles, Trivial) {
  const auto g = path_graph(4);
  const auto ps = particles(trivial_esd(g));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0].key.kind, ParticleKind::Vertex);
  EXPECT_EQ(ps[0].members, all_vertices(g));
}

TEST(Particles, SingleEdgeFormulas) {
  const Esd d = single_edge_esd();
  const auto ps = particles(d);
  ASSERT_EQ(ps.size(), 6u);
  std::map<ParticleKey, VertexSet> by_key;
  for (const auto& p : ps) by_key[p.key] = p.members;
  EXPECT_TRUE(by_key.at(vertex_particle(0)).empty());
  EXPECT_TRUE(by_key.at(vertex_particle(1)).empty());
  EXPECT_TRUE(by_key.at(interior_particle(0, 1)).empty());
  EXPECT_EQ(by_key.at(half_particle(0, 1, 0)), VertexSet{0});
  EXPECT_EQ(by_key.at(half_particle(0, 1, 1)), VertexSet{1});
  EXPECT_EQ(by_key.at(full_particle(0, 1)), (VertexSet{0, 1}));
}

TEST(Particles, TriangleOccurrences) {
  std::vector<Edge> he{{0, 1}, {0, 2}, {1, 2}};
  Esd d(3, he);
  d.set_triangle_set(0, 1, 2, {0});
  const auto g = make_graph({1}, {});
  ASSERT_TRUE(validate_esd(g, d).ok());
  const auto ps = particles(d);
  int count = 0;
  for (const auto& p : ps)
    if (contains(p.members, 0)) ++count;
  EXPECT_EQ(count, 4);
  EXPECT_EQ(ps.back().key.kind, ParticleKind::Triangle);
  EXPECT_EQ(ps.back().members, VertexSet{0});
  EXPECT_EQ(occurrence_bound(g, d), 4);
}

TEST(Particles, OccurrenceBoundOnRandomInstances) {
  Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto inst = random_esd_instance(rng, 14, 4, 20, 6);
    EXPECT_LE(occurrence_bound(inst.g, inst.d), occurrence_limit(inst.d));
  }
}

TEST(Particles, VertexSetOccurrenceIsTwoDegreePlusOne) {
  // v in eta(x) with deg_H(x) = 2 appears in A_x, two half particles and two full particles.
  std::vector<Edge> he{{0, 1}, {0, 2}};
  Esd d(3, he);
  d.set_vertex_set(0, {0});
  const auto g = make_graph({1}, {});
  ASSERT_TRUE(validate_esd(g, d).ok());
  EXPECT_EQ(occurrence_bound(g, d), 5);
}

TEST(PatternDegree, Checks) {
  const auto g = path_graph(2);
  EXPECT_TRUE(check_pattern_degree(g, trivial_esd(g), 1));
  EXPECT_TRUE(check_pattern_degree(g, single_edge_esd(), 3));

  // A rigid 3-star needs three pairwise adjacent interface vertices, which a
  // triangle-free graph cannot provide.
  std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  Esd d(4, star);
  d.set_edge_sets(0, 1, {0, 1}, {0}, {1});
  d.set_edge_sets(0, 2, {2, 3}, {2}, {3});
  d.set_edge_sets(0, 3, {4, 5}, {4}, {5});
  const auto tf = make_graph(std::vector<Weight>(6, 1), {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {0, 4}, {2, 4}});
  EXPECT_FALSE(check_pattern_degree(tf, d, 3));
  const auto without_triangle =
      make_graph(std::vector<Weight>(6, 1), {{0, 1}, {2, 3}, {4, 5}, {0, 2}, {0, 4}});
  EXPECT_FALSE(validate_esd(without_triangle, d, true).ok());
}

TEST(RestrictEsd, IdentityAndTrivial) {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_esd_instance(rng, 12, 3, 20);
    EXPECT_EQ(restrict_esd(inst.g, inst.d, all_vertices(inst.g)), inst.d);
  }
  const auto g = path_graph(5);
  const Esd r = restrict_esd(g, trivial_esd(g), VertexSet{1, 3});
  EXPECT_EQ(r.vertex_set(0), (VertexSet{0, 1}));
}

TEST(RestrictEsd, SingleEdgeToOneEnd) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  const Esd r = restrict_esd(g, single_edge_esd(), VertexSet{0});
  EXPECT_EQ(r.edge_set(0, 1), VertexSet{0});
  EXPECT_EQ(r.edge_end(0, 1, 0), VertexSet{0});
  EXPECT_TRUE(r.edge_end(0, 1, 1).empty());
  EXPECT_TRUE(validate_esd(induced_subgraph(g, VertexSet{0}), r).ok());
  EXPECT_FALSE(validate_esd(induced_subgraph(g, VertexSet{0}), r, true).ok());
}

TEST(RestrictEsd, RandomSubsetsStayValid) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_esd_instance(rng, 14, 3, 20);
    VertexSet keep;
    for (Vertex v = 0; v < inst.g.size(); ++v)
      if (coin(rng, 0.7)) keep.push_back(v);
    const Esd r = restrict_esd(inst.g, inst.d, keep);
    EXPECT_TRUE(validate_esd(induced_subgraph(inst.g, keep), r).ok());
  }
}

TEST(LineGraphEsd, IsValidAndRigid) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto base = generate_graph_with_edges(7, 9, seed);
    const auto lg = line_graph(base);
    const Report r = validate_esd(lg, line_graph_esd(base));
    EXPECT_TRUE(r.ok()) << r.to_string();
  }
}

TEST(EsdIo, RoundTrip) {
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const auto inst = random_esd_instance(rng, 12, 3, 20);
    const std::string text = write_esd(inst.d);
    EXPECT_EQ(read_esd(text, inst.g), inst.d);
  }
}

TEST(EsdIo, RejectsInvalid) {
  const auto g = make_graph({2, 3}, {{0, 1}});
  EXPECT_NO_THROW(read_esd("h 2 1\nhe 1 2\neta e 1 2 : 1 2 | 1 | 2\n", g));
  EXPECT_THROW(read_esd("h 2 1\nhe 1 2\neta e 1 2 : 2 | | 2\n", g), ParseError);
  EXPECT_THROW(read_esd("h 2 1\nhe 1 3\n", g), ParseError);
  EXPECT_THROW(read_esd("eta v 1 : 1 2\n", g), ParseError);
}
