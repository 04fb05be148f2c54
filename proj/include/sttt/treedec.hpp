#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sttt/graph.hpp"
#include "sttt/graph_io.hpp"

namespace sttt {

// Tree T with a bag per node. Nodes are 0..num_nodes()-1.
class TreeDecomposition {
 public:
  TreeDecomposition() = default;
  TreeDecomposition(std::vector<VertexSet> bags, std::vector<Edge> tree_edges)
      : bags_(std::move(bags)), adj_(bags_.size()) {
    for (auto& b : bags_) b = normalized(std::move(b));
    for (auto [s, t] : tree_edges) {
      if (s < 0 || t < 0 || s >= num_nodes() || t >= num_nodes() || s == t)
        throw InputError("TreeDecomposition: bad tree edge");
      edges_.emplace_back(std::min(s, t), std::max(s, t));
      adj_[s].push_back(t);
      adj_[t].push_back(s);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  int num_nodes() const { return static_cast<int>(bags_.size()); }
  const VertexSet& bag(int node) const { return bags_.at(node); }
  const std::vector<VertexSet>& bags() const { return bags_; }
  const std::vector<int>& neighbors(int node) const { return adj_.at(node); }
  const std::vector<Edge>& tree_edges() const { return edges_; }
  VertexSet adhesion(int s, int t) const { return set_intersection(bag(s), bag(t)); }

  // Nodes on t's side after deleting tree edge st.
  std::vector<int> side(int s, int t) const {
    std::vector<int> out{t};
    std::vector<char> seen(num_nodes(), 0);
    seen[s] = seen[t] = 1;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (int x : adj_[out[i]])
        if (!seen[x]) seen[x] = 1, out.push_back(x);
    return out;
  }
  // Union of the bags on t's side of st, minus the adhesion.
  VertexSet side_vertices(int s, int t) const {
    VertexSet u;
    for (int x : side(s, t)) u = set_union(u, bag(x));
    return set_difference(u, adhesion(s, t));
  }

  friend bool operator==(const TreeDecomposition& a, const TreeDecomposition& b) {
    return a.bags_ == b.bags_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<VertexSet> bags_;
  std::vector<std::vector<int>> adj_;
  std::vector<Edge> edges_;
};

inline TreeDecomposition single_bag_td(const WeightedGraph& g) { return TreeDecomposition({all_vertices(g)}, {}); }

inline Report validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
  Report rep;
  const int nodes = td.num_nodes();
  if (nodes == 0) {
    if (g.size() > 0) rep.add("tree", "no nodes");
    return rep;
  }
  if (static_cast<int>(td.tree_edges().size()) != nodes - 1) rep.add("tree", "tree needs exactly nodes-1 edges");
  {
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : td.neighbors(x))
        if (!seen[y]) seen[y] = 1, ++reached, stack.push_back(y);
    }
    if (reached != nodes) rep.add("tree", "tree is not connected");
  }
  for (int x = 0; x < nodes; ++x)
    for (Vertex v : td.bag(x))
      if (v < 0 || v >= g.size())
        rep.add("bags", "bag " + std::to_string(x) + " has unknown vertex " + std::to_string(v));
  if (!rep.ok()) return rep;

  std::vector<std::vector<int>> holders(g.size());
  for (int x = 0; x < nodes; ++x)
    for (Vertex v : td.bag(x)) holders[v].push_back(x);
  for (auto [u, v] : g.edges()) {
    std::vector<int> both;
    std::set_intersection(holders[u].begin(), holders[u].end(), holders[v].begin(), holders[v].end(),
                          std::back_inserter(both));
    if (both.empty()) rep.add("edges", "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    if (holders[v].empty()) {
      rep.add("connectivity", "vertex " + std::to_string(v) + " is in no bag");
      continue;
    }
    std::vector<char> has(nodes, 0), seen(nodes, 0);
    for (int x : holders[v]) has[x] = 1;
    std::vector<int> stack{holders[v][0]};
    seen[holders[v][0]] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : td.neighbors(x))
        if (has[y] && !seen[y]) seen[y] = 1, ++reached, stack.push_back(y);
    }
    if (reached != holders[v].size())
      rep.add("connectivity", "bags holding vertex " + std::to_string(v) + " are not connected in the tree");
  }
  if (!rep.ok()) return rep;

  // Separation, by components of G minus the adhesion.
  for (auto [s, t] : td.tree_edges()) {
    const VertexSet sigma = td.adhesion(s, t);
    const VertexSet a = td.side_vertices(t, s), b = td.side_vertices(s, t);
    std::vector<char> allowed(g.size(), 1);
    for (Vertex v : sigma) allowed[v] = 0;
    const auto side_a = membership(g.size(), a), side_b = membership(g.size(), b);
    for (const auto& comp : connected_components(g, &allowed)) {
      bool in_a = false, in_b = false;
      for (Vertex v : comp) in_a = in_a || side_a[v], in_b = in_b || side_b[v];
      if (in_a && in_b) {
        rep.add("separation", "adhesion of tree edge " + std::to_string(s) + "-" + std::to_string(t) +
                                  " does not separate its sides");
        break;
      }
    }
  }
  return rep;
}

// G[bag] plus a clique on every adhesion at the node; vertex order follows the bag.
inline WeightedGraph torso(const WeightedGraph& g, const TreeDecomposition& td, int node) {
  const VertexSet& bag = td.bag(node);
  std::vector<Edge> edges;
  auto pos = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin()); };
  for (std::size_t i = 0; i < bag.size(); ++i)
    for (std::size_t j = i + 1; j < bag.size(); ++j)
      if (g.adjacent(bag[i], bag[j])) edges.emplace_back(i, j);
  for (int s : td.neighbors(node)) {
    const VertexSet sigma = td.adhesion(node, s);
    for (std::size_t i = 0; i < sigma.size(); ++i)
      for (std::size_t j = i + 1; j < sigma.size(); ++j) edges.emplace_back(pos(sigma[i]), pos(sigma[j]));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<Weight> w;
  std::vector<Label> labels;
  for (Vertex v : bag) w.push_back(g.weight(v)), labels.push_back(g.label(v));
  return WeightedGraph(std::move(w), edges, std::move(labels));
}

inline int weissauer_degree_cap(int k) { return 2 * k * (k - 1); }

// Adhesions below k, and at most k vertices of torso degree above 2k(k-1) per torso.
inline Report check_weissauer(const WeightedGraph& g, const TreeDecomposition& td, int k) {
  Report rep;
  for (auto [s, t] : td.tree_edges()) {
    const auto size = td.adhesion(s, t).size();
    if (static_cast<int>(size) >= k)
      rep.add("adhesion", "tree edge " + std::to_string(s) + "-" + std::to_string(t) + " has adhesion " +
                              std::to_string(size) + " >= " + std::to_string(k));
  }
  for (int x = 0; x < td.num_nodes(); ++x) {
    const WeightedGraph tor = torso(g, td, x);
    int high = 0;
    for (Vertex v = 0; v < tor.size(); ++v) high += tor.degree(v) > weissauer_degree_cap(k);
    if (high > k)
      rep.add("torso", "torso of node " + std::to_string(x) + " has " + std::to_string(high) +
                           " vertices of degree above " + std::to_string(weissauer_degree_cap(k)));
  }
  return rep;
}

namespace detail {

// Unit vertex capacities; finds a minimum a-b vertex separator when it has fewer
// than `limit` vertices (a, b non-adjacent).
class VertexCut {
 public:
  explicit VertexCut(const WeightedGraph& g) : g_(g), n_(g.size()) {}

  std::optional<VertexSet> min_cut(Vertex a, Vertex b, int limit) {
    // Node v_in = 2v, v_out = 2v+1. Arc capacity: in->out is 1 (inf for a, b); out->in' is inf.
    const int nodes = 2 * n_;
    struct Arc {
      int to, rev, cap;
    };
    std::vector<std::vector<Arc>> arcs(nodes);
    const int inf = n_ + 1;
    auto add = [&](int u, int v, int c) {
      arcs[u].push_back({v, static_cast<int>(arcs[v].size()), c});
      arcs[v].push_back({u, static_cast<int>(arcs[u].size()) - 1, 0});
    };
    for (Vertex v = 0; v < n_; ++v) add(2 * v, 2 * v + 1, (v == a || v == b) ? inf : 1);
    for (auto [u, v] : g_.edges()) {
      add(2 * u + 1, 2 * v, inf);
      add(2 * v + 1, 2 * u, inf);
    }
    const int src = 2 * a + 1, sink = 2 * b;
    int flow = 0;
    std::vector<std::pair<int, int>> parent(nodes);
    auto bfs = [&](std::vector<char>& seen) {
      std::fill(seen.begin(), seen.end(), 0);
      std::vector<int> queue{src};
      seen[src] = 1;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        int u = queue[i];
        for (std::size_t j = 0; j < arcs[u].size(); ++j) {
          const Arc& e = arcs[u][j];
          if (e.cap > 0 && !seen[e.to]) {
            seen[e.to] = 1;
            parent[e.to] = {u, static_cast<int>(j)};
            queue.push_back(e.to);
          }
        }
      }
      return static_cast<bool>(seen[sink]);
    };
    std::vector<char> seen(nodes);
    while (bfs(seen)) {
      if (++flow >= limit) return std::nullopt;
      for (int v = sink; v != src;) {
        auto [u, j] = parent[v];
        Arc& e = arcs[u][j];
        e.cap -= 1;
        arcs[v][e.rev].cap += 1;
        v = u;
      }
    }
    VertexSet cut;
    for (Vertex v = 0; v < n_; ++v)
      if (seen[2 * v] && !seen[2 * v + 1]) cut.push_back(v);
    return cut;
  }

 private:
  const WeightedGraph& g_;
  int n_;
};

inline int local_connectivity(const WeightedGraph& g, Vertex a, Vertex b, int limit) {
  if (g.adjacent(a, b)) return limit;
  auto cut = VertexCut(g).min_cut(a, b, limit);
  return cut ? static_cast<int>(cut->size()) : limit;
}

}  // namespace detail

// The builder could not reach the Weissauer conditions.
struct TreeDecompositionFailure : CapacityError {
  TreeDecompositionFailure(const std::string& what, std::size_t largest)
      : CapacityError(what + " (largest unresolved part: " + std::to_string(largest) + " vertices)"),
        largest_part(largest) {}
  std::size_t largest_part;
};

struct WeissauerBudget {
  std::uint64_t max_cut_queries = 200'000;
};

// Best-effort builder. A part P carries extra cliques (interfaces to pieces
// already split off). If G[P] plus those cliques has at most k vertices of degree
// above 2k(k-1), P becomes a bag. Otherwise P is split along a minimum vertex
// separator Z with |Z| < k (components first, then separators between
// high-degree vertices); Z becomes its own bag and each piece D u N(D) recurses
// with N(D) as a new clique. The result is always re-validated.
inline TreeDecomposition build_weissauer(const WeightedGraph& g, int k, const WeissauerBudget& budget = {}) {
  if (k < 1) throw InputError("build_weissauer: k must be positive");
  if (g.size() == 0) return TreeDecomposition({VertexSet{}}, {});
  std::vector<VertexSet> bags;
  std::vector<Edge> tree;
  std::uint64_t queries = 0;
  const int cap = weissauer_degree_cap(k);

  struct Part {
    VertexSet vertices;
    std::vector<VertexSet> cliques;
  };
  auto build = [&](auto&& self, const Part& part) -> void {
    const VertexSet& p = part.vertices;
    auto pos = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(p.begin(), p.end(), v) - p.begin()); };
    std::vector<Edge> local;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (Vertex u : g.neighbors(p[i]))
        if (u > p[i] && contains(p, u)) local.emplace_back(static_cast<Vertex>(i), pos(u));
    for (const auto& c : part.cliques)
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) local.emplace_back(pos(c[i]), pos(c[j]));
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    const WeightedGraph gp(std::vector<Weight>(p.size(), 1), local);

    std::vector<Vertex> high;
    for (Vertex v = 0; v < gp.size(); ++v)
      if (gp.degree(v) > cap) high.push_back(v);
    if (static_cast<int>(high.size()) <= k) {
      bags.push_back(p);
      return;
    }

    // Empty separator if disconnected, else the smallest cut (ties: smallest
    // largest piece) between a high-degree vertex and a non-neighbour.
    std::optional<VertexSet> best;
    std::size_t best_piece = 0;
    if (connected_components(gp).size() > 1) {
      best = VertexSet{};
    } else {
      detail::VertexCut vc(gp);
      for (Vertex a : high) {
        for (Vertex b = 0; b < gp.size(); ++b) {
          if (b == a || gp.adjacent(a, b) || (b < a && gp.degree(b) > cap)) continue;
          if (++queries > budget.max_cut_queries)
            throw TreeDecompositionFailure("separator search budget exhausted", p.size());
          auto cut = vc.min_cut(a, b, best ? static_cast<int>(best->size()) + 1 : k);
          if (!cut) continue;
          std::vector<char> allowed(gp.size(), 1);
          for (Vertex v : *cut) allowed[v] = 0;
          std::size_t largest = 0;
          for (const auto& c : connected_components(gp, &allowed)) largest = std::max(largest, c.size());
          if (!best || cut->size() < best->size() || (cut->size() == best->size() && largest < best_piece)) {
            best = *cut;
            best_piece = largest;
          }
        }
      }
    }
    if (!best)
      throw TreeDecompositionFailure(
          "no separator with fewer than " + std::to_string(k) + " vertices splits a high-degree vertex off", p.size());

    std::vector<char> allowed(gp.size(), 1);
    for (Vertex v : *best) allowed[v] = 0;
    VertexSet z;
    for (Vertex v : *best) z.push_back(p[v]);
    bags.push_back(z);
    const int center = static_cast<int>(bags.size()) - 1;
    for (const auto& comp : connected_components(gp, &allowed)) {
      const VertexSet local_nd = set_difference(closed_neighborhood(gp, comp), comp);
      VertexSet d, nd;
      for (Vertex v : comp) d.push_back(p[v]);
      for (Vertex v : local_nd) nd.push_back(p[v]);
      Part piece{set_union(d, nd), {}};
      for (const auto& c : part.cliques)
        if (is_subset(c, piece.vertices) && !is_subset(c, nd)) piece.cliques.push_back(c);
      piece.cliques.push_back(nd);
      const int first = static_cast<int>(bags.size());
      self(self, piece);
      // nd is a clique of the piece, so some bag of the piece subtree holds it.
      int attach = -1;
      for (int x = first; x < static_cast<int>(bags.size()) && attach < 0; ++x)
        if (is_subset(nd, bags[x])) attach = x;
      if (attach < 0) throw TreeDecompositionFailure("interface lost while splitting", p.size());
      tree.emplace_back(center, attach);
    }
  };
  build(build, Part{all_vertices(g), {}});

  TreeDecomposition td(std::move(bags), tree);
  Report rep = validate_tree_decomposition(g, td);
  rep.append(check_weissauer(g, td, k));
  if (!rep.ok()) throw TreeDecompositionFailure("built decomposition rejected: " + rep.to_string(), g.size());
  return td;
}

// A set of k vertices, no two separable by deleting fewer than k other vertices.
// Exhaustive, so limited to small graphs.
inline std::optional<VertexSet> find_k_block(const WeightedGraph& g, int k, int max_vertices = 25) {
  if (g.size() > max_vertices)
    throw CapacityError("find_k_block: graph has " + std::to_string(g.size()) + " vertices, limit " +
                        std::to_string(max_vertices));
  if (k <= 0) return VertexSet{};
  const int n = g.size();
  std::vector<std::vector<char>> ok(n, std::vector<char>(n, 0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) ok[u][v] = ok[v][u] = detail::local_connectivity(g, u, v, k) >= k;
  VertexSet cur;
  auto rec = [&](auto&& self, Vertex from) -> bool {
    if (static_cast<int>(cur.size()) == k) return true;
    for (Vertex v = from; v < n; ++v) {
      bool fits = true;
      for (Vertex u : cur) fits = fits && ok[u][v];
      if (!fits) continue;
      cur.push_back(v);
      if (self(self, v + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  if (rec(rec, 0)) return cur;
  return std::nullopt;
}

// Text format, 1-based: "t <nodes>", then "b <node> : <vertices>" per node and
// "te <s> <t>" per tree edge; "c" lines are comments.
inline TreeDecomposition read_tree_decomposition(std::string_view text, const WeightedGraph& g) {
  int nodes = -1;
  std::vector<VertexSet> bags;
  std::vector<char> seen_bag;
  std::vector<Edge> tree;
  std::size_t last = 0;
  io::for_each_line(text, [&](std::string_view raw, std::size_t line) {
    last = line;
    const auto toks = io::split_ws(raw);
    if (toks.empty() || toks[0] == "c") return;
    if (toks[0] == "t") {
      if (nodes >= 0) throw ParseError(line, "duplicate header");
      if (toks.size() != 2) throw ParseError(line, "expected: t <nodes>");
      nodes = static_cast<int>(io::parse_uint(toks[1], line, "node count"));
      bags.assign(nodes, {});
      seen_bag.assign(nodes, 0);
      return;
    }
    if (nodes < 0) throw ParseError(line, "missing header line 't <nodes>'");
    if (toks[0] == "b") {
      if (toks.size() < 3 || toks[2] != ":") throw ParseError(line, "expected: b <node> : <vertices>");
      const auto node = io::parse_uint(toks[1], line, "node id");
      if (node < 1 || node > static_cast<std::uint64_t>(nodes)) throw ParseError(line, "node id out of range");
      if (seen_bag[node - 1]) throw ParseError(line, "bag given twice");
      seen_bag[node - 1] = 1;
      auto ids = io::parse_id_list(std::span(toks).subspan(3), line, g.size(), "vertex");
      bags[node - 1] = normalized(std::vector<Vertex>(ids.begin(), ids.end()));
    } else if (toks[0] == "te") {
      if (toks.size() != 3) throw ParseError(line, "expected: te <s> <t>");
      const auto s = io::parse_uint(toks[1], line, "node id"), t = io::parse_uint(toks[2], line, "node id");
      if (s < 1 || t < 1 || s > static_cast<std::uint64_t>(nodes) || t > static_cast<std::uint64_t>(nodes) || s == t)
        throw ParseError(line, "tree edge endpoints out of range");
      tree.emplace_back(static_cast<int>(s - 1), static_cast<int>(t - 1));
    } else {
      throw ParseError(line, "unknown record '" + std::string(toks[0]) + "'");
    }
  });
  if (nodes < 0) throw ParseError(last, "missing header line 't <nodes>'");
  TreeDecomposition td(std::move(bags), tree);
  Report rep = validate_tree_decomposition(g, td);
  if (!rep.ok()) throw ParseError(last, "invalid tree decomposition: " + rep.to_string());
  return td;
}

inline std::string write_tree_decomposition(const TreeDecomposition& td) {
  std::ostringstream os;
  os << "t " << td.num_nodes() << "\n";
  for (int x = 0; x < td.num_nodes(); ++x) {
    os << "b " << x + 1 << " :";
    for (Vertex v : td.bag(x)) os << ' ' << v + 1;
    os << "\n";
  }
  for (auto [s, t] : td.tree_edges()) os << "te " << s + 1 << ' ' << t + 1 << "\n";
  return os.str();
}

}  // namespace sttt
