#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sttt/graph.hpp"
#include "sttt/graph_io.hpp"

namespace sttt {

using Triangle = std::array<Vertex, 3>;

struct EdgeSets {
  VertexSet all;       // eta(xy)
  VertexSet at_lower;  // eta(xy, x) for the smaller endpoint x
  VertexSet at_upper;  // eta(xy, y) for the larger endpoint y
};

// Extended strip decomposition (H, eta) of some graph G. Pattern vertices are
// 0..|V(H)|-1; eta-sets hold vertex ids of G. Absent edge and triangle entries
// stand for empty sets.
class ExtendedStripDecomposition {
 public:
  ExtendedStripDecomposition() = default;
  ExtendedStripDecomposition(int pattern_vertices, std::span<const Edge> pattern_edges)
      : pattern_(std::vector<Weight>(pattern_vertices, 1), normalize_edges(pattern_edges)),
        vertex_sets_(pattern_vertices) {}

  const WeightedGraph& pattern() const { return pattern_; }

  const VertexSet& vertex_set(Vertex x) const { return vertex_sets_.at(x); }
  void set_vertex_set(Vertex x, VertexSet s) { vertex_sets_.at(x) = normalized(std::move(s)); }

  // eta(xy), eta(xy,x), eta(xy,y) in the argument order given.
  void set_edge_sets(Vertex x, Vertex y, VertexSet all, VertexSet at_x, VertexSet at_y) {
    require_edge(x, y);
    EdgeSets e{normalized(std::move(all)), normalized(std::move(at_x)), normalized(std::move(at_y))};
    if (x > y) std::swap(e.at_lower, e.at_upper);
    edge_sets_[key(x, y)] = std::move(e);
  }
  const VertexSet& edge_set(Vertex x, Vertex y) const { return lookup_edge(x, y).all; }
  // eta(xy, end) where end is x or y.
  const VertexSet& edge_end(Vertex x, Vertex y, Vertex end) const {
    const EdgeSets& e = lookup_edge(x, y);
    if (end == std::min(x, y)) return e.at_lower;
    if (end == std::max(x, y)) return e.at_upper;
    throw InputError("edge_end: end is not an endpoint");
  }

  void set_triangle_set(Vertex x, Vertex y, Vertex z, VertexSet s) {
    Triangle tri = sorted_triangle(x, y, z);
    if (!pattern_.adjacent(tri[0], tri[1]) || !pattern_.adjacent(tri[0], tri[2]) ||
        !pattern_.adjacent(tri[1], tri[2]))
      throw InputError("set_triangle_set: not a triangle of the pattern");
    triangle_sets_[tri] = normalized(std::move(s));
  }
  const VertexSet& triangle_set(Vertex x, Vertex y, Vertex z) const {
    auto it = triangle_sets_.find(sorted_triangle(x, y, z));
    return it == triangle_sets_.end() ? empty_ : it->second;
  }

  // T(H) as sorted triples in lexicographic order.
  std::vector<Triangle> triangles() const {
    std::vector<Triangle> out;
    for (auto [x, y] : pattern_.edges())
      for (Vertex z : pattern_.neighbors(y))
        if (z > y && pattern_.adjacent(x, z)) out.push_back({x, y, z});
    return out;
  }
  // Third vertices z with xyz a triangle, ascending.
  std::vector<Vertex> triangle_apexes(Vertex x, Vertex y) const {
    std::vector<Vertex> out;
    for (Vertex z : pattern_.neighbors(x))
      if (z != y && pattern_.adjacent(y, z)) out.push_back(z);
    return out;
  }

  friend bool operator==(const ExtendedStripDecomposition& a, const ExtendedStripDecomposition& b) {
    if (!(a.pattern_ == b.pattern_) || a.vertex_sets_ != b.vertex_sets_) return false;
    for (auto [x, y] : a.pattern_.edges()) {
      const auto &ea = a.lookup_edge(x, y), &eb = b.lookup_edge(x, y);
      if (ea.all != eb.all || ea.at_lower != eb.at_lower || ea.at_upper != eb.at_upper) return false;
    }
    for (const auto& t : a.triangles())
      if (a.triangle_set(t[0], t[1], t[2]) != b.triangle_set(t[0], t[1], t[2])) return false;
    return true;
  }

 private:
  static std::vector<Edge> normalize_edges(std::span<const Edge> edges) {
    std::vector<Edge> out;
    for (auto [x, y] : edges) out.emplace_back(std::min(x, y), std::max(x, y));
    return out;
  }
  static Edge key(Vertex x, Vertex y) { return {std::min(x, y), std::max(x, y)}; }
  static Triangle sorted_triangle(Vertex x, Vertex y, Vertex z) {
    Triangle t{x, y, z};
    std::sort(t.begin(), t.end());
    return t;
  }
  void require_edge(Vertex x, Vertex y) const {
    if (x < 0 || y < 0 || x >= pattern_.size() || y >= pattern_.size() || x == y || !pattern_.adjacent(x, y))
      throw InputError("not an edge of the pattern");
  }
  const EdgeSets& lookup_edge(Vertex x, Vertex y) const {
    require_edge(x, y);
    auto it = edge_sets_.find(key(x, y));
    return it == edge_sets_.end() ? empty_edge_ : it->second;
  }

  WeightedGraph pattern_;
  std::vector<VertexSet> vertex_sets_;
  std::map<Edge, EdgeSets> edge_sets_;
  std::map<Triangle, VertexSet> triangle_sets_;
  inline static const VertexSet empty_{};
  inline static const EdgeSets empty_edge_{};
};

using Esd = ExtendedStripDecomposition;

// H = one isolated vertex holding all of V(G); the empty pattern for the empty graph.
inline Esd trivial_esd(const WeightedGraph& g) {
  if (g.empty()) return Esd(0, {});
  Esd d(1, {});
  d.set_vertex_set(0, all_vertices(g));
  return d;
}

// One isolated pattern vertex per given part (typically connected components).
inline Esd component_esd(const std::vector<VertexSet>& parts) {
  Esd d(static_cast<int>(parts.size()), {});
  for (std::size_t i = 0; i < parts.size(); ++i) d.set_vertex_set(static_cast<Vertex>(i), parts[i]);
  return d;
}

// ESD of L(base) with H = base: line-graph vertex i (the i-th edge xy of base)
// sits in eta(xy), eta(xy,x) and eta(xy,y).
inline Esd line_graph_esd(const WeightedGraph& base) {
  const auto edges = base.edges();
  Esd d(base.size(), edges);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const VertexSet one{static_cast<Vertex>(i)};
    d.set_edge_sets(edges[i].first, edges[i].second, one, one, one);
  }
  return d;
}

// ---------------------------------------------------------------- validation

namespace detail {

// Which H-object owns each G vertex, as resolved from the partition.
struct Owner {
  enum Kind { None, VertexObj, EdgeObj, TriangleObj } kind = None;
  Vertex a = -1, b = -1, c = -1;
};

}  // namespace detail

// Checks P1-P3 (and rigidity when asked). Violations are returned, never thrown.
inline Report validate_esd(const WeightedGraph& g, const Esd& d, bool require_rigid = false) {
  Report report;
  const WeightedGraph& h = d.pattern();
  const int n = g.size();
  std::vector<int> count(n, 0);
  std::vector<detail::Owner> owner(n);

  auto in_range = [&](const VertexSet& s, const std::string& what) {
    for (Vertex v : s)
      if (v < 0 || v >= n) {
        report.add("range", what + " references unknown vertex " + std::to_string(v));
        return false;
      }
    return true;
  };
  auto assign = [&](const VertexSet& s, detail::Owner o) {
    for (Vertex v : s) {
      ++count[v];
      owner[v] = o;
    }
  };

  for (Vertex x = 0; x < h.size(); ++x) {
    const auto& s = d.vertex_set(x);
    if (in_range(s, "eta(" + std::to_string(x) + ")")) assign(s, {detail::Owner::VertexObj, x});
  }
  for (auto [x, y] : h.edges()) {
    const std::string name = "eta(" + std::to_string(x) + std::to_string(y) + ")";
    const auto& all = d.edge_set(x, y);
    const auto& ex = d.edge_end(x, y, x);
    const auto& ey = d.edge_end(x, y, y);
    bool ok = in_range(all, name) && in_range(ex, name) && in_range(ey, name);
    if (!is_subset(ex, all) || !is_subset(ey, all)) {
      report.add("P1", name + " end-subsets are not contained in the edge set");
      ok = false;
    }
    if (ok) assign(all, {detail::Owner::EdgeObj, x, y});
  }
  for (const auto& t : d.triangles()) {
    const auto& s = d.triangle_set(t[0], t[1], t[2]);
    if (in_range(s, "eta(triangle)")) assign(s, {detail::Owner::TriangleObj, t[0], t[1], t[2]});
  }
  for (Vertex v = 0; v < n; ++v) {
    if (count[v] == 0) report.add("P1", "vertex " + std::to_string(v) + " is in no set");
    if (count[v] > 1) report.add("P1", "vertex " + std::to_string(v) + " is in " + std::to_string(count[v]) + " sets");
  }
  if (!report.ok()) return report;

  // P2.
  for (Vertex x = 0; x < h.size(); ++x) {
    auto nb = h.neighbors(x);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        for (Vertex u : d.edge_end(x, nb[i], x))
          for (Vertex v : d.edge_end(x, nb[j], x))
            if (!g.adjacent(u, v))
              report.add("P2", "vertices " + std::to_string(u) + " and " + std::to_string(v) +
                                   " at pattern vertex " + std::to_string(x) + " are not adjacent");
  }

  // P3.
  auto in_end = [&](Vertex v, const detail::Owner& o, Vertex end) {
    return o.kind == detail::Owner::EdgeObj && contains(d.edge_end(o.a, o.b, end), v);
  };
  auto sanctioned = [&](Vertex u, Vertex v) {
    const auto &ou = owner[u], &ov = owner[v];
    if (ou.kind == detail::Owner::EdgeObj) {
      for (Vertex x : {ou.a, ou.b}) {
        if (!in_end(u, ou, x)) continue;
        // u in eta(xy,x), v in eta(xz,x) with z != y.
        if (ov.kind == detail::Owner::EdgeObj && (ov.a == x || ov.b == x) && in_end(v, ov, x)) return true;
        // u in eta(xy,x), v in eta(x).
        if (ov.kind == detail::Owner::VertexObj && ov.a == x) return true;
      }
      // v in eta(xyz), u in eta(xy,x) and eta(xy,y).
      if (ov.kind == detail::Owner::TriangleObj && in_end(u, ou, ou.a) && in_end(u, ou, ou.b)) {
        std::array<Vertex, 3> t{ov.a, ov.b, ov.c};
        if (std::count(t.begin(), t.end(), ou.a) && std::count(t.begin(), t.end(), ou.b)) return true;
      }
    }
    return false;
  };
  for (auto [u, v] : g.edges()) {
    const auto &ou = owner[u], &ov = owner[v];
    if (ou.kind == ov.kind && ou.a == ov.a && ou.b == ov.b && ou.c == ov.c) continue;
    if (sanctioned(u, v) || sanctioned(v, u)) continue;
    report.add("P3", "edge " + std::to_string(u) + "-" + std::to_string(v) + " crosses pattern objects illegally");
  }

  if (require_rigid) {
    for (auto [x, y] : h.edges()) {
      if (d.edge_set(x, y).empty() || d.edge_end(x, y, x).empty() || d.edge_end(x, y, y).empty())
        report.add("rigid", "edge " + std::to_string(x) + "-" + std::to_string(y) + " has an empty set");
    }
    for (Vertex x = 0; x < h.size(); ++x)
      if (h.degree(x) == 0 && d.vertex_set(x).empty())
        report.add("rigid", "isolated pattern vertex " + std::to_string(x) + " has an empty set");
  }
  return report;
}

// ----------------------------------------------------------------- particles

enum class ParticleKind { Vertex, EdgeInterior, HalfEdge, FullEdge, Triangle };

inline const char* to_string(ParticleKind k) {
  switch (k) {
    case ParticleKind::Vertex: return "vertex";
    case ParticleKind::EdgeInterior: return "edge-interior";
    case ParticleKind::HalfEdge: return "half-edge";
    case ParticleKind::FullEdge: return "full-edge";
    case ParticleKind::Triangle: return "triangle";
  }
  return "?";
}

// Identifies a particle. Vertex: (x). Edge kinds: (x, y) with x < y; a half-edge
// also records its side (x or y). Triangle: (x, y, z) sorted.
struct ParticleKey {
  ParticleKind kind = ParticleKind::Vertex;
  Vertex x = -1, y = -1, z = -1;
  Vertex side = -1;
  auto operator<=>(const ParticleKey&) const = default;
};

struct Particle {
  ParticleKey key;
  VertexSet members;
  bool empty() const { return members.empty(); }
};

inline ParticleKey vertex_particle(Vertex x) { return {ParticleKind::Vertex, x}; }
inline ParticleKey interior_particle(Vertex x, Vertex y) {
  return {ParticleKind::EdgeInterior, std::min(x, y), std::max(x, y)};
}
inline ParticleKey half_particle(Vertex x, Vertex y, Vertex side) {
  return {ParticleKind::HalfEdge, std::min(x, y), std::max(x, y), -1, side};
}
inline ParticleKey full_particle(Vertex x, Vertex y) {
  return {ParticleKind::FullEdge, std::min(x, y), std::max(x, y)};
}
inline ParticleKey triangle_particle(Vertex x, Vertex y, Vertex z) {
  Triangle t{x, y, z};
  std::sort(t.begin(), t.end());
  return {ParticleKind::Triangle, t[0], t[1], t[2]};
}

// Every particle, empty ones included, in a fixed order: vertex particles, then
// per pattern edge interior / half at x / half at y / full, then triangles.
inline std::vector<Particle> particles(const Esd& d) {
  const WeightedGraph& h = d.pattern();
  std::vector<Particle> out;
  for (Vertex x = 0; x < h.size(); ++x) out.push_back({vertex_particle(x), d.vertex_set(x)});
  for (auto [x, y] : h.edges()) {
    const auto& all = d.edge_set(x, y);
    const auto& ex = d.edge_end(x, y, x);
    const auto& ey = d.edge_end(x, y, y);
    out.push_back({interior_particle(x, y), set_difference(all, set_union(ex, ey))});
    out.push_back({half_particle(x, y, x), set_union(d.vertex_set(x), set_difference(all, ey))});
    out.push_back({half_particle(x, y, y), set_union(d.vertex_set(y), set_difference(all, ex))});
    VertexSet full = set_union(set_union(d.vertex_set(x), d.vertex_set(y)), all);
    for (Vertex z : d.triangle_apexes(x, y)) full = set_union(full, d.triangle_set(x, y, z));
    out.push_back({full_particle(x, y), std::move(full)});
  }
  for (const auto& t : d.triangles())
    out.push_back({triangle_particle(t[0], t[1], t[2]), d.triangle_set(t[0], t[1], t[2])});
  return out;
}

inline std::size_t total_particle_size(const std::vector<Particle>& ps) {
  std::size_t s = 0;
  for (const auto& p : ps) s += p.members.size();
  return s;
}

// Structural bounds, asserted by the solvers after every decomposition.

// Max degree of H is at most t-1.
inline bool check_pattern_degree(const WeightedGraph&, const Esd& d, int t) {
  return d.pattern().max_degree() <= t - 1;
}

inline int occurrence_bound(const WeightedGraph& g, const Esd& d) {
  std::vector<int> count(g.size(), 0);
  for (const auto& p : particles(d))
    for (Vertex v : p.members) ++count[v];
  int best = 0;
  for (int c : count) best = std::max(best, c);
  return best;
}

inline int occurrence_limit(const Esd& d) { return std::max(4, 2 * d.pattern().max_degree() + 1); }

// -------------------------------------------------------------- restriction

// Intersects every eta-set with `keep` (ids of g) and renumbers into G[keep]
// (induced_subgraph numbering). Throws ContractViolation if the result is invalid.
inline Esd restrict_esd(const WeightedGraph& g, const Esd& d, const VertexSet& keep) {
  std::vector<Vertex> position(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= g.size()) throw InputError("restrict_esd: unknown vertex");
    position[keep[i]] = static_cast<Vertex>(i);
  }
  auto map = [&](const VertexSet& s) {
    VertexSet out;
    for (Vertex v : s)
      if (position[v] >= 0) out.push_back(position[v]);
    return out;
  };
  const WeightedGraph& h = d.pattern();
  Esd r(h.size(), h.edges());
  for (Vertex x = 0; x < h.size(); ++x) r.set_vertex_set(x, map(d.vertex_set(x)));
  for (auto [x, y] : h.edges())
    r.set_edge_sets(x, y, map(d.edge_set(x, y)), map(d.edge_end(x, y, x)), map(d.edge_end(x, y, y)));
  for (const auto& t : d.triangles()) r.set_triangle_set(t[0], t[1], t[2], map(d.triangle_set(t[0], t[1], t[2])));
  const WeightedGraph sub = induced_subgraph(g, keep);
  Report rep = validate_esd(sub, r, false);
  if (!rep.ok())
    throw ContractViolation("restricted decomposition invalid: " + rep.violations.front().property + ": " +
                            rep.violations.front().detail);
  return r;
}

// ------------------------------------------------------------------------ I/O

// Text format, 1-based ids:
//   h <nH> <mH>
//   he <x> <y>
//   eta v <x> : <list>
//   eta e <x> <y> : <list> | <x-end list> | <y-end list>
//   eta t <x> <y> <z> : <list>
// parse_esd only checks syntax and id ranges (graph ids below `graph_size`);
// read_esd also validates the result against `g`.
inline Esd parse_esd(std::string_view text, int graph_size) {
  int nh = -1;
  std::size_t mh = 0;
  std::vector<Edge> hedges;
  struct Pending {
    std::size_t line;
    std::vector<std::string_view> toks;
  };
  std::vector<Pending> eta_lines;
  std::size_t last_line = 0;
  io::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    last_line = lineno;
    auto toks = io::split_ws(line);
    if (toks.empty() || toks[0] == "c") return;
    if (toks[0] == "h") {
      if (nh >= 0) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 3) throw ParseError(lineno, "header must be 'h <nH> <mH>'");
      nh = static_cast<int>(io::parse_uint(toks[1], lineno, "pattern vertex count"));
      mh = io::parse_uint(toks[2], lineno, "pattern edge count");
      return;
    }
    if (nh < 0) throw ParseError(lineno, "expected header 'h <nH> <mH>' first");
    if (toks[0] == "he") {
      if (toks.size() != 3) throw ParseError(lineno, "pattern edge must be 'he <x> <y>'");
      auto ids = io::parse_id_list(std::span(toks).subspan(1, 2), lineno, nh, "pattern vertex");
      if (ids[0] == ids[1]) throw ParseError(lineno, "pattern self-loop");
      hedges.emplace_back(ids[0], ids[1]);
    } else if (toks[0] == "eta") {
      eta_lines.push_back({lineno, toks});
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(toks[0]) + "'");
    }
  });
  if (nh < 0) throw ParseError(last_line, "missing header");
  if (hedges.size() != mh) throw ParseError(last_line, "pattern edge count mismatch");
  Esd d;
  try {
    d = Esd(nh, hedges);
  } catch (const InputError& e) {
    throw ParseError(last_line, std::string("bad pattern: ") + e.what());
  }

  for (const auto& [lineno, toks] : eta_lines) {
    if (toks.size() < 3) throw ParseError(lineno, "truncated eta line");
    std::size_t colon = 0;
    while (colon < toks.size() && toks[colon] != ":") ++colon;
    if (colon == toks.size()) throw ParseError(lineno, "eta line needs ':'");
    auto head = std::span(toks).subspan(2, colon - 2);
    std::vector<std::vector<int>> lists(1);
    for (std::size_t i = colon + 1; i < toks.size(); ++i) {
      if (toks[i] == "|") {
        lists.emplace_back();
        continue;
      }
      auto id = io::parse_id_list(std::span(toks).subspan(i, 1), lineno, graph_size, "graph vertex");
      lists.back().push_back(id[0]);
    }
    auto hv = io::parse_id_list(head, lineno, nh, "pattern vertex");
    try {
      if (toks[1] == "v") {
        if (hv.size() != 1 || lists.size() != 1) throw ParseError(lineno, "eta v needs one pattern vertex");
        d.set_vertex_set(hv[0], lists[0]);
      } else if (toks[1] == "e") {
        if (hv.size() != 2 || lists.size() != 3)
          throw ParseError(lineno, "eta e needs two pattern vertices and three lists");
        d.set_edge_sets(hv[0], hv[1], lists[0], lists[1], lists[2]);
      } else if (toks[1] == "t") {
        if (hv.size() != 3 || lists.size() != 1) throw ParseError(lineno, "eta t needs three pattern vertices");
        d.set_triangle_set(hv[0], hv[1], hv[2], lists[0]);
      } else {
        throw ParseError(lineno, "unknown eta kind '" + std::string(toks[1]) + "'");
      }
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return d;
}

inline Esd read_esd(std::string_view text, const WeightedGraph& g) {
  Esd d = parse_esd(text, g.size());
  Report rep = validate_esd(g, d, false);
  if (!rep.ok())
    throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                     "invalid decomposition: " + rep.violations.front().property + ": " +
                            rep.violations.front().detail);
  return d;
}

// The same decomposition with every eta-set member v replaced by to[v].
inline Esd relabel_esd(const Esd& d, const std::vector<Vertex>& to) {
  auto map = [&](const VertexSet& s) {
    VertexSet out;
    for (Vertex v : s) out.push_back(to.at(v));
    return out;
  };
  const WeightedGraph& h = d.pattern();
  Esd r(h.size(), h.edges());
  for (Vertex x = 0; x < h.size(); ++x) r.set_vertex_set(x, map(d.vertex_set(x)));
  for (auto [x, y] : h.edges())
    r.set_edge_sets(x, y, map(d.edge_set(x, y)), map(d.edge_end(x, y, x)), map(d.edge_end(x, y, y)));
  for (const auto& t : d.triangles()) r.set_triangle_set(t[0], t[1], t[2], map(d.triangle_set(t[0], t[1], t[2])));
  return r;
}

inline std::string write_esd(const Esd& d) {
  std::ostringstream out;
  auto list = [&](const VertexSet& s) {
    for (Vertex v : s) out << ' ' << v + 1;
  };
  const WeightedGraph& h = d.pattern();
  out << "h " << h.size() << ' ' << h.num_edges() << '\n';
  for (auto [x, y] : h.edges()) out << "he " << x + 1 << ' ' << y + 1 << '\n';
  for (Vertex x = 0; x < h.size(); ++x) {
    if (d.vertex_set(x).empty()) continue;
    out << "eta v " << x + 1 << " :";
    list(d.vertex_set(x));
    out << '\n';
  }
  for (auto [x, y] : h.edges()) {
    out << "eta e " << x + 1 << ' ' << y + 1 << " :";
    list(d.edge_set(x, y));
    out << " |";
    list(d.edge_end(x, y, x));
    out << " |";
    list(d.edge_end(x, y, y));
    out << '\n';
  }
  for (const auto& t : d.triangles()) {
    if (d.triangle_set(t[0], t[1], t[2]).empty()) continue;
    out << "eta t " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << " :";
    list(d.triangle_set(t[0], t[1], t[2]));
    out << '\n';
  }
  return out.str();
}

}  // namespace sttt
