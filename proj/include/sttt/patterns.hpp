#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sttt/graph.hpp"

namespace sttt {

// An induced S_{a,b,c}: a center plus three legs listed from the center outwards
// (the center itself is not part of a leg). Leg i has legs[i].size() edges.
struct SubdividedClawWitness {
  Vertex center = -1;
  std::array<std::vector<Vertex>, 3> legs;

  VertexSet vertices() const {
    VertexSet out{center};
    for (const auto& leg : legs) out.insert(out.end(), leg.begin(), leg.end());
    return normalized(std::move(out));
  }
};

// True iff the witness vertices induce exactly the subdivided claw it describes.
inline bool is_induced_subdivided_claw(const WeightedGraph& g, const SubdividedClawWitness& w) {
  std::vector<Vertex> all{w.center};
  std::vector<Edge> tree;
  for (const auto& leg : w.legs) {
    if (leg.empty()) return false;
    Vertex prev = w.center;
    for (Vertex v : leg) {
      all.push_back(v);
      tree.emplace_back(std::min(prev, v), std::max(prev, v));
      prev = v;
    }
  }
  for (Vertex v : all)
    if (v < 0 || v >= g.size()) return false;
  if (normalized(all).size() != all.size()) return false;
  std::sort(tree.begin(), tree.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      Edge e{std::min(all[i], all[j]), std::max(all[i], all[j])};
      bool want = std::binary_search(tree.begin(), tree.end(), e);
      if (g.adjacent(all[i], all[j]) != want) return false;
    }
  return true;
}

namespace detail {

class ClawSearch {
 public:
  ClawSearch(const WeightedGraph& g, int t) : g_(g), t_(t), chosen_(g.size(), 0), touch_(g.size(), 0) {}

  std::optional<SubdividedClawWitness> from_center(Vertex c) {
    if (g_.degree(c) < 3) return std::nullopt;
    witness_ = SubdividedClawWitness{};
    witness_.center = c;
    choose(c);
    bool found = extend(0, 0);
    if (!found) unchoose(c);
    if (!found) return std::nullopt;
    // Leave the search state clean for the next center.
    for (const auto& leg : witness_.legs)
      for (Vertex v : leg) unchoose(v);
    unchoose(c);
    return witness_;
  }

 private:
  void choose(Vertex v) {
    chosen_[v] = 1;
    for (Vertex u : g_.neighbors(v)) ++touch_[u];
  }
  void unchoose(Vertex v) {
    chosen_[v] = 0;
    for (Vertex u : g_.neighbors(v)) --touch_[u];
  }

  bool extend(int leg, int len) {
    if (leg == 3) return true;
    if (len == t_) return extend(leg + 1, 0);
    auto& path = witness_.legs[leg];
    const Vertex parent = len == 0 ? witness_.center : path.back();
    for (Vertex v : g_.neighbors(parent)) {
      // v may only see its parent among the vertices picked so far.
      if (chosen_[v] || touch_[v] != 1) continue;
      // Legs have equal length, so order them by their first vertex.
      if (len == 0 && leg > 0 && v <= witness_.legs[leg - 1].front()) continue;
      choose(v);
      path.push_back(v);
      if (extend(leg, len + 1)) return true;
      path.pop_back();
      unchoose(v);
    }
    return false;
  }

  const WeightedGraph& g_;
  int t_;
  std::vector<char> chosen_;
  std::vector<int> touch_;
  SubdividedClawWitness witness_;
};

}  // namespace detail

// Exhaustive search for an induced S_{t,t,t}, trying centers in `centers` (all
// vertices when empty) in the given order.
inline std::optional<SubdividedClawWitness> find_induced_sttt(const WeightedGraph& g, int t,
                                                              std::span<const Vertex> centers = {}) {
  if (t < 1) throw InputError("find_induced_sttt: t must be positive");
  detail::ClawSearch search(g, t);
  if (centers.empty()) {
    for (Vertex c = 0; c < g.size(); ++c)
      if (auto w = search.from_center(c)) return w;
  } else {
    for (Vertex c : centers)
      if (auto w = search.from_center(c)) return w;
  }
  return std::nullopt;
}

// Is there a pair of disjoint t-sets A, B with every a-b pair adjacent (not necessarily induced)?
inline bool contains_biclique_subgraph(const WeightedGraph& g, int t) {
  if (t < 1) throw InputError("contains_biclique_subgraph: t must be positive");
  std::vector<Vertex> candidates;
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.degree(v) >= t) candidates.push_back(v);

  auto rec = [&](auto&& self, std::size_t from, int picked, const VertexSet& common) -> bool {
    if (picked == t) return true;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      const Vertex v = candidates[i];
      VertexSet next;
      if (picked == 0) {
        next.assign(g.neighbors(v).begin(), g.neighbors(v).end());
      } else {
        VertexSet nv(g.neighbors(v).begin(), g.neighbors(v).end());
        next = set_intersection(common, nv);
      }
      if (static_cast<int>(next.size()) < t) continue;
      if (self(self, i + 1, picked + 1, next)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0, {});
}

// S_{a,b,c} with unit weights: vertex 0 is the center, then leg a, leg b, leg c,
// each listed from the center outwards.
inline WeightedGraph generate_subdivided_claw(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw InputError("generate_subdivided_claw: leg lengths must be positive");
  const int n = a + b + c + 1;
  std::vector<Edge> edges;
  Vertex next = 1;
  for (int len : {a, b, c}) {
    Vertex prev = 0;
    for (int i = 0; i < len; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return WeightedGraph(std::vector<Weight>(n, 1), edges);
}

// L(G): one vertex per edge of G (in G.edges() order), adjacent iff the edges share an
// endpoint. Vertex i gets edge_weights[i]; unit weights when edge_weights is empty.
inline WeightedGraph line_graph(const WeightedGraph& g, std::span<const Weight> edge_weights = {}) {
  const auto edges = g.edges();
  if (!edge_weights.empty() && edge_weights.size() != edges.size())
    throw InputError("line_graph: one weight per edge required");
  std::vector<std::vector<int>> incident(g.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].first].push_back(static_cast<int>(i));
    incident[edges[i].second].push_back(static_cast<int>(i));
  }
  std::vector<Edge> out;
  for (const auto& inc : incident)
    for (std::size_t i = 0; i < inc.size(); ++i)
      for (std::size_t j = i + 1; j < inc.size(); ++j) out.emplace_back(inc[i], inc[j]);
  // Two edges of a simple graph share at most one endpoint, so no duplicates arise.
  std::vector<Weight> weights(edges.size(), 1);
  if (!edge_weights.empty()) weights.assign(edge_weights.begin(), edge_weights.end());
  return WeightedGraph(std::move(weights), out);
}

// Clique number by simple branch and bound; fine for sparse desk-scale graphs.
inline int clique_number(const WeightedGraph& g) {
  int best = g.empty() ? 0 : 1;
  auto rec = [&](auto&& self, int size, const VertexSet& cand) -> void {
    if (cand.empty()) {
      best = std::max(best, size);
      return;
    }
    if (size + static_cast<int>(cand.size()) <= best) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (size + static_cast<int>(cand.size() - i) <= best) return;
      const Vertex v = cand[i];
      VertexSet next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (g.adjacent(v, cand[j])) next.push_back(cand[j]);
      self(self, size + 1, next);
    }
  };
  for (Vertex v = 0; v < g.size(); ++v) {
    VertexSet higher;
    for (Vertex u : g.neighbors(v))
      if (u > v) higher.push_back(u);
    rec(rec, 1, higher);
  }
  return best;
}

}  // namespace sttt
