#pragma once

// Shared helpers for the unit and acceptance suites: small graph builders,
// naive reference checks and a generator of random graphs with a valid
// extended strip decomposition.

#include <sttt/combine.hpp>
#include <sttt/generators.hpp>
#include <sttt/oracle.hpp>

#include <functional>
#include <memory>
#include <set>
#include <vector>

namespace sttt::testing {

inline WeightedGraph make_graph(std::vector<Weight> w, std::vector<Edge> e) { return WeightedGraph(std::move(w), e); }

inline WeightedGraph path_graph(int n, Weight w = 1) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return WeightedGraph(std::vector<Weight>(n, w), e);
}

inline WeightedGraph cycle_graph(int n, Weight w = 1) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return WeightedGraph(std::vector<Weight>(n, w), e);
}

inline WeightedGraph complete_graph(int n, Weight w = 1) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return WeightedGraph(std::vector<Weight>(n, w), e);
}

inline WeightedGraph disjoint_union(const WeightedGraph& a, const WeightedGraph& b) {
  std::vector<Weight> w = a.weights();
  w.insert(w.end(), b.weights().begin(), b.weights().end());
  auto e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.size(), v + a.size());
  return WeightedGraph(std::move(w), e);
}

// Every k-subset of {0..n-1}.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<Vertex>&)>& fn) {
  std::vector<Vertex> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      fn(cur);
      return;
    }
    for (int v = from; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

// Does G[S] look exactly like S_{t,t,t}? A tree with one degree-3 vertex, three
// leaves at distance t from it and every other vertex of degree 2.
inline bool induces_sttt(const WeightedGraph& g, const std::vector<Vertex>& s, int t) {
  const WeightedGraph sub = induced_subgraph(g, s);
  if (static_cast<int>(sub.num_edges()) != sub.size() - 1) return false;
  if (connected_components(sub).size() != 1) return false;
  int center = -1;
  for (Vertex v = 0; v < sub.size(); ++v) {
    const int d = sub.degree(v);
    if (d == 3) {
      if (center >= 0) return false;
      center = v;
    } else if (d != 1 && d != 2) {
      return false;
    }
  }
  if (center < 0) return false;
  std::vector<int> dist(sub.size(), -1);
  std::vector<Vertex> order{center};
  dist[center] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex u : sub.neighbors(order[i]))
      if (dist[u] < 0) dist[u] = dist[order[i]] + 1, order.push_back(u);
  for (Vertex v = 0; v < sub.size(); ++v)
    if (sub.degree(v) == 1 && dist[v] != t) return false;
  return true;
}

inline bool naive_has_sttt(const WeightedGraph& g, int t) {
  bool found = false;
  if (g.size() < 3 * t + 1) return false;
  for_each_subset(g.size(), 3 * t + 1, [&](const std::vector<Vertex>& s) {
    if (!found && induces_sttt(g, s, t)) found = true;
  });
  return found;
}

inline bool naive_has_biclique(const WeightedGraph& g, int t) {
  bool found = false;
  for_each_subset(g.size(), t, [&](const std::vector<Vertex>& a) {
    if (found) return;
    VertexSet common = all_vertices(g);
    for (Vertex v : a) common = set_intersection(common, VertexSet(g.neighbors(v).begin(), g.neighbors(v).end()));
    if (static_cast<int>(common.size()) >= t) found = true;
  });
  return found;
}

// A random graph together with a valid extended strip decomposition of it and a
// random terminal set. Every optional cross edge permitted by the decomposition
// rules is added with probability `edge_p`; the pairs forced complete between
// interfaces at a common pattern vertex are always present.
struct EsdInstance {
  WeightedGraph g;
  Esd d;
  VertexSet terminals;
};

inline EsdInstance random_esd_instance(Rng& rng, int max_vertices, int max_terminals, Weight max_weight,
                                       int max_pattern_vertices = 5, double edge_p = 0.35) {
  const int nh = static_cast<int>(uniform_between(rng, 1, max_pattern_vertices));
  std::vector<Edge> hedges;
  for (int x = 0; x < nh; ++x)
    for (int y = x + 1; y < nh; ++y)
      if (coin(rng, 0.5)) hedges.emplace_back(x, y);
  Esd shape(nh, hedges);
  const auto tris = shape.triangles();

  // Objects: 0..nh-1 vertices, then edges, then triangles.
  const int n = static_cast<int>(uniform_between(rng, 1, max_vertices));
  const int objects = nh + static_cast<int>(hedges.size() + tris.size());
  std::vector<int> obj(n);
  std::vector<int> side(n, 0);  // for edge objects: 0 interior, 1 lower end, 2 upper end, 3 both
  for (int v = 0; v < n; ++v) {
    obj[v] = static_cast<int>(uniform_below(rng, objects));
    side[v] = static_cast<int>(uniform_below(rng, 4));
  }
  std::vector<VertexSet> vsets(nh);
  std::vector<std::array<VertexSet, 3>> esets(hedges.size());
  std::vector<VertexSet> tsets(tris.size());
  for (int v = 0; v < n; ++v) {
    if (obj[v] < nh) {
      vsets[obj[v]].push_back(v);
    } else if (obj[v] < nh + static_cast<int>(hedges.size())) {
      auto& e = esets[obj[v] - nh];
      e[0].push_back(v);
      if (side[v] & 1) e[1].push_back(v);
      if (side[v] & 2) e[2].push_back(v);
    } else {
      tsets[obj[v] - nh - hedges.size()].push_back(v);
    }
  }
  Esd d(nh, hedges);
  for (int x = 0; x < nh; ++x) d.set_vertex_set(x, vsets[x]);
  for (std::size_t i = 0; i < hedges.size(); ++i)
    d.set_edge_sets(hedges[i].first, hedges[i].second, esets[i][0], esets[i][1], esets[i][2]);
  for (std::size_t i = 0; i < tris.size(); ++i) d.set_triangle_set(tris[i][0], tris[i][1], tris[i][2], tsets[i]);

  std::set<Edge> edges;
  auto add = [&](Vertex u, Vertex v, bool forced) {
    if (u == v) return;
    if (forced || coin(rng, edge_p)) edges.insert({std::min(u, v), std::max(u, v)});
  };
  const WeightedGraph& h = d.pattern();
  // Inside one object.
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (obj[u] == obj[v]) add(u, v, false);
  for (Vertex x = 0; x < nh; ++x) {
    auto nb = h.neighbors(x);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      // Interface at x to eta(x).
      for (Vertex u : d.edge_end(x, nb[i], x))
        for (Vertex v : d.vertex_set(x)) add(u, v, false);
      // Interfaces at x are complete to each other.
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        for (Vertex u : d.edge_end(x, nb[i], x))
          for (Vertex v : d.edge_end(x, nb[j], x)) add(u, v, true);
    }
  }
  for (const auto& t : tris) {
    for (auto [a, b] : {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}}) {
      const VertexSet both = set_intersection(d.edge_end(a, b, a), d.edge_end(a, b, b));
      for (Vertex u : d.triangle_set(t[0], t[1], t[2]))
        for (Vertex v : both) add(u, v, false);
    }
  }
  std::vector<Edge> edge_list(edges.begin(), edges.end());
  WeightedGraph g(detail::random_weights(rng, n, 0, max_weight), edge_list);

  VertexSet terms;
  const int k = static_cast<int>(uniform_between(rng, 0, std::min(max_terminals, n)));
  std::vector<Vertex> all = all_vertices(g);
  shuffle_in_place(all, rng);
  terms.assign(all.begin(), all.begin() + k);
  return {std::move(g), std::move(d), normalized(terms)};
}

// Brute-force profile of every particle of d, aligned with particles(d).
inline std::vector<BorderProfile> particle_profiles(const WeightedGraph& g, const Esd& d, const VertexSet& terminals) {
  std::vector<BorderProfile> out;
  for (const auto& p : particles(d)) {
    const WeightedGraph sub = induced_subgraph(g, p.members);
    VertexSet t;
    for (std::size_t i = 0; i < p.members.size(); ++i)
      if (contains(terminals, p.members[i])) t.push_back(static_cast<Vertex>(i));
    out.push_back(brute_force_border(sub, t));
  }
  return out;
}

// Optimal witness for one cell of a particle profile, in ids of g.
inline ParticleWitnessFn particle_witnesses(const WeightedGraph& g, const Esd& d, const VertexSet& terminals) {
  auto ps = std::make_shared<std::vector<Particle>>(particles(d));
  return [&g, ps, terminals](std::size_t i, Mask cell) {
    const auto& members = (*ps)[i].members;
    const WeightedGraph sub = induced_subgraph(g, members);
    VertexSet t;
    for (std::size_t j = 0; j < members.size(); ++j)
      if (contains(terminals, members[j])) t.push_back(static_cast<Vertex>(j));
    // Bits of the particle profile follow label order, which is id order here.
    VertexSet chosen;
    for (std::size_t b = 0; b < t.size(); ++b)
      if (cell >> b & 1) chosen.push_back(t[b]);
    auto w = border_cell_witness(sub, t, chosen);
    VertexSet out;
    for (Vertex v : w.value()) out.push_back(members[v]);
    return out;
  };
}

}  // namespace sttt::testing
