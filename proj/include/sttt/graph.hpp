#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "sttt/core.hpp"

namespace sttt {

using Edge = std::pair<Vertex, Vertex>;

// Vertex-weighted undirected simple graph with dense ids 0..n-1.
//
// Each vertex carries a label that survives induced_subgraph, so vertices can be
// matched up across the many subgraphs a recursion creates. Immutable once built.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  // Throws InputError on loops, duplicate edges or out-of-range endpoints.
  // Labels default to the vertex ids and must be unique.
  WeightedGraph(std::vector<Weight> weights, std::span<const Edge> edges,
                std::vector<Label> labels = {})
      : weights_(std::move(weights)), labels_(std::move(labels)) {
    const int n = size();
    if (labels_.empty()) {
      labels_.resize(weights_.size());
      for (int v = 0; v < n; ++v) labels_[v] = static_cast<Label>(v);
    }
    if (labels_.size() != weights_.size()) throw InputError("label count differs from vertex count");
    adj_.assign(weights_.size(), {});
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
      if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
      adj_[u].push_back(v);
      adj_[v].push_back(u);
    }
    for (auto& list : adj_) {
      std::sort(list.begin(), list.end());
      if (std::adjacent_find(list.begin(), list.end()) != list.end())
        throw InputError("duplicate edge");
      edge_count_ += list.size();
    }
    edge_count_ /= 2;
    by_label_.reserve(labels_.size());
    for (int v = 0; v < n; ++v) by_label_.emplace_back(labels_[v], v);
    std::sort(by_label_.begin(), by_label_.end());
    for (std::size_t i = 1; i < by_label_.size(); ++i)
      if (by_label_[i].first == by_label_[i - 1].first) throw InputError("duplicate vertex label");
  }

  int size() const { return static_cast<int>(weights_.size()); }
  bool empty() const { return weights_.empty(); }
  std::size_t num_edges() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
  }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
    const Vertex other = adj_[u].size() <= adj_[v].size() ? v : u;
    return std::binary_search(a.begin(), a.end(), other);
  }

  Weight weight(Vertex v) const { return weights_[v]; }
  const std::vector<Weight>& weights() const { return weights_; }
  Label label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }

  std::optional<Vertex> find_label(Label l) const {
    auto it = std::lower_bound(by_label_.begin(), by_label_.end(), std::make_pair(l, Vertex{0}));
    if (it == by_label_.end() || it->first != l) return std::nullopt;
    return it->second;
  }

  // Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  Weight weight_of(std::span<const Vertex> vs) const {
    Weight w = 0;
    for (Vertex v : vs) w += weights_[v];
    return w;
  }

  bool is_independent(std::span<const Vertex> vs) const {
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (vs[i] == vs[j] || adjacent(vs[i], vs[j])) return false;
    return true;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.weights_ == b.weights_ && a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<Weight> weights_;
  std::vector<Label> labels_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::pair<Label, Vertex>> by_label_;
  std::size_t edge_count_ = 0;
};

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
inline bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline VertexSet all_vertices(const WeightedGraph& g) {
  VertexSet out(g.size());
  for (Vertex v = 0; v < g.size(); ++v) out[v] = v;
  return out;
}

// G[S]. Vertices of the result are the members of S in ascending order, so
// vertex i of the subgraph is the i-th smallest element of S.
inline WeightedGraph induced_subgraph(const WeightedGraph& g, std::span<const Vertex> subset) {
  VertexSet s(subset.begin(), subset.end());
  s = normalized(std::move(s));
  for (Vertex v : s)
    if (v < 0 || v >= g.size()) throw InputError("induced_subgraph: unknown vertex " + std::to_string(v));
  std::vector<Vertex> position(g.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) position[s[i]] = static_cast<Vertex>(i);
  std::vector<Weight> weights;
  std::vector<Label> labels;
  std::vector<Edge> edges;
  weights.reserve(s.size());
  labels.reserve(s.size());
  for (Vertex v : s) {
    weights.push_back(g.weight(v));
    labels.push_back(g.label(v));
    for (Vertex u : g.neighbors(v))
      if (u > v && position[u] >= 0) edges.emplace_back(position[v], position[u]);
  }
  return WeightedGraph(std::move(weights), edges, std::move(labels));
}

// N[S].
inline VertexSet closed_neighborhood(const WeightedGraph& g, const VertexSet& s) {
  std::vector<char> mark(g.size(), 0);
  for (Vertex v : s) {
    mark[v] = 1;
    for (Vertex u : g.neighbors(v)) mark[u] = 1;
  }
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

// N(S) = N[S] \ S.
inline VertexSet open_neighborhood(const WeightedGraph& g, const VertexSet& s) {
  return set_difference(closed_neighborhood(g, s), s);
}

// Connected components of G[allowed] (all of G when `allowed` is null), each sorted,
// ordered by smallest member.
inline std::vector<VertexSet> connected_components(const WeightedGraph& g,
                                                   const std::vector<char>* allowed = nullptr) {
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexSet> comps;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s] || (allowed && !(*allowed)[s])) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex u : g.neighbors(v))
        if (!seen[u] && (!allowed || (*allowed)[u])) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::vector<char> membership(int n, const VertexSet& s) {
  std::vector<char> m(n, 0);
  for (Vertex v : s) m[v] = 1;
  return m;
}

// Vertices of `sub` (an induced subgraph of `host`) expressed as host ids, via labels.
inline VertexSet host_ids(const WeightedGraph& host, const WeightedGraph& sub, const VertexSet& in_sub) {
  VertexSet out;
  out.reserve(in_sub.size());
  for (Vertex v : in_sub) {
    auto h = host.find_label(sub.label(v));
    if (!h) throw InputError("vertex label missing from host graph");
    out.push_back(*h);
  }
  return normalized(std::move(out));
}

}  // namespace sttt
