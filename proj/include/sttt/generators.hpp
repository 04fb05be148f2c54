#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sttt/graph.hpp"
#include "sttt/patterns.hpp"

namespace sttt {

using Rng = std::mt19937_64;

// Uniform draw from [0, bound). Rejection sampling keeps the stream identical
// across standard library implementations, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

inline std::uint64_t uniform_between(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

inline bool coin(Rng& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

namespace detail {

// Mutable adjacency used while growing an instance edge by edge.
class GrowingGraph {
 public:
  explicit GrowingGraph(int n) : adj_(n) {}

  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(Vertex u, Vertex v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }
  void add(Vertex u, Vertex v) {
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  void remove_last() {
    auto [u, v] = edges_.back();
    edges_.pop_back();
    adj_[u].erase(std::lower_bound(adj_[u].begin(), adj_[u].end(), v));
    adj_[v].erase(std::lower_bound(adj_[v].begin(), adj_[v].end(), u));
  }
  WeightedGraph snapshot(const std::vector<Weight>& weights) const {
    return WeightedGraph(weights, edges_);
  }
  // Vertices within distance `radius` of v.
  std::vector<Vertex> ball(Vertex v, int radius) const {
    std::vector<int> dist(adj_.size(), -1);
    std::vector<Vertex> order{v};
    dist[v] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      Vertex x = order[i];
      if (dist[x] == radius) continue;
      for (Vertex y : adj_[x])
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          order.push_back(y);
        }
    }
    return order;
  }
  // Would edge uv close a 4-cycle u-a-b-v?
  bool closes_four_cycle(Vertex u, Vertex v) const {
    for (Vertex a : adj_[u]) {
      if (a == v) continue;
      for (Vertex b : adj_[a])
        if (b != u && b != v && adjacent(b, v)) return true;
    }
    return false;
  }

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

struct GrowthRules {
  int max_degree = 0;
  int t = 1;
  bool forbid_biclique = false;  // K_{t,t} as a subgraph
};

// Tries candidate edges in order and keeps those that respect the rules.
inline WeightedGraph grow(int n, const std::vector<Edge>& candidates, const GrowthRules& rules,
                          const std::vector<Weight>& weights) {
  GrowingGraph g(n);
  for (auto [u, v] : candidates) {
    if (g.adjacent(u, v) || g.degree(u) >= rules.max_degree || g.degree(v) >= rules.max_degree) continue;
    if (rules.forbid_biclique && rules.t == 2 && g.closes_four_cycle(u, v)) continue;
    g.add(u, v);
    WeightedGraph snap = g.snapshot(weights);
    // A new induced S_{t,t,t} must use the new edge, so its center lies within t of u.
    auto centers = g.ball(u, rules.t);
    bool bad = find_induced_sttt(snap, rules.t, centers).has_value();
    if (!bad && rules.forbid_biclique && rules.t != 2) bad = contains_biclique_subgraph(snap, rules.t);
    if (bad) g.remove_last();
  }
  return g.snapshot(weights);
}

inline std::vector<Weight> random_weights(Rng& rng, int n, Weight lo, Weight hi) {
  std::vector<Weight> w(n);
  for (auto& x : w) x = uniform_between(rng, lo, hi);
  return w;
}

inline std::vector<Edge> shuffled_pairs(Rng& rng, int n, std::size_t max_candidates) {
  std::vector<Edge> pairs;
  const std::size_t all = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (all <= max_candidates) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    shuffle_in_place(pairs, rng);
  } else {
    while (pairs.size() < max_candidates) {
      Vertex u = static_cast<Vertex>(uniform_below(rng, n));
      Vertex v = static_cast<Vertex>(uniform_below(rng, n));
      if (u != v) pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  return pairs;
}

}  // namespace detail

// Random graph with maximum degree <= max_degree that contains no induced S_{t,t,t},
// weights uniform in [1, 100]. Grown greedily from a seeded shuffle of vertex pairs,
// rejecting each edge that would break either constraint.
inline WeightedGraph generate_random_instance(int n, int max_degree, int t, std::uint64_t seed) {
  if (n < 0 || max_degree < 0 || t < 1) throw InputError("generate_random_instance: bad parameters");
  Rng rng(seed);
  auto weights = detail::random_weights(rng, n, 1, 100);
  auto candidates = detail::shuffled_pairs(rng, n, std::max<std::size_t>(100000, 40ull * n * (max_degree + 1)));
  WeightedGraph g = detail::grow(n, candidates, {max_degree, t, false}, weights);
  if (g.max_degree() > max_degree || find_induced_sttt(g, t))
    throw GenerationError("generate_random_instance: produced graph failed verification");
  return g;
}

// Random S_{t,t,t}-free graph with no K_{t,t} subgraph, built as a tree of blocks
// glued at cut vertices so that tree decompositions with small adhesions exist.
// Blocks have between 3 and max_block vertices; weights uniform in [1, 100].
inline WeightedGraph generate_biclique_free_instance(int n, int max_degree, int t, std::uint64_t seed,
                                                     int max_block = 10) {
  if (n < 0 || max_degree < 0 || t < 1 || max_block < 3)
    throw InputError("generate_biclique_free_instance: bad parameters");
  Rng rng(seed);
  auto weights = detail::random_weights(rng, n, 1, 100);
  std::vector<std::vector<Vertex>> blocks;
  Vertex next = 0;
  while (next < n) {
    std::vector<Vertex> block;
    if (next > 0) block.push_back(static_cast<Vertex>(uniform_below(rng, next)));
    int want = static_cast<int>(uniform_between(rng, 3, max_block));
    while (static_cast<int>(block.size()) < want && next < n) block.push_back(next++);
    blocks.push_back(std::move(block));
  }
  std::vector<Edge> candidates;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        candidates.emplace_back(std::min(b[i], b[j]), std::max(b[i], b[j]));
  shuffle_in_place(candidates, rng);
  WeightedGraph g = detail::grow(n, candidates, {max_degree, t, true}, weights);
  if (g.max_degree() > max_degree || find_induced_sttt(g, t) || contains_biclique_subgraph(g, t))
    throw GenerationError("generate_biclique_free_instance: produced graph failed verification");
  return g;
}

// Erdos-Renyi style graph without structural constraints.
inline WeightedGraph generate_random_graph(int n, double edge_probability, std::uint64_t seed,
                                           Weight max_weight = 100) {
  Rng rng(seed);
  auto weights = detail::random_weights(rng, n, 1, max_weight);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng, edge_probability)) edges.emplace_back(u, v);
  return WeightedGraph(std::move(weights), edges);
}

// Random simple graph with exactly `m` edges on `n` vertices (m is clamped to n(n-1)/2).
inline WeightedGraph generate_graph_with_edges(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  shuffle_in_place(pairs, rng);
  pairs.resize(std::min<std::size_t>(pairs.size(), static_cast<std::size_t>(std::max(m, 0))));
  std::sort(pairs.begin(), pairs.end());
  return WeightedGraph(std::vector<Weight>(n, 1), pairs);
}

}  // namespace sttt
