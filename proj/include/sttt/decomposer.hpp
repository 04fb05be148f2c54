#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "sttt/esd.hpp"
#include "sttt/patterns.hpp"

namespace sttt {

using Path = std::vector<Vertex>;

// Paths P with X = union of P, and a decomposition of G - N[X]. `remainder` is
// V(G) \ N[X] ascending; the ESD uses ids of induced_subgraph(G, remainder).
struct PathFamily {
  std::vector<Path> paths;
  VertexSet remainder;
  Esd esd;

  VertexSet path_vertices() const {
    VertexSet x;
    for (const auto& p : paths) x.insert(x.end(), p.begin(), p.end());
    return normalized(std::move(x));
  }
};

using DecomposeOutcome = std::variant<SubdividedClawWitness, PathFamily>;

// The reference search ran out of candidates or budget. `best_imbalance` is the
// smallest "max U-vertices in one particle" seen, against `allowed`.
struct DecompositionNotFound : CapacityError {
  DecompositionNotFound(int best, int allowed)
      : CapacityError("decomposition not found: best particle holds " + std::to_string(best) +
                      " vertices of U, allowed " + std::to_string(allowed)),
        best_imbalance(best) {}
  int best_imbalance;
};

inline int log2_ceil_bound(int n, double factor, double add) {
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
  return static_cast<int>(std::ceil(factor * lg + add - 1e-9));
}

// ceil(11 log2 n + 6).
inline int path_count_limit(int n) { return log2_ceil_bound(n, 11.0, 6.0); }

inline int balance_limit(std::size_t u) { return static_cast<int>((u + 1) / 2); }

class Decomposer {
 public:
  virtual ~Decomposer() = default;
  // U in ids of g.
  virtual DecomposeOutcome decompose(const WeightedGraph& g, const VertexSet& u, int t) = 0;
};

// Checks the outcome contract: a genuine induced S_{t,t,t}, or at most
// ceil(11 log2 n + 6) induced paths of at most t+2 vertices each, a rigid valid
// ESD of G - N[X], and at most ceil(|U|/2) vertices of U in every particle.
inline Report validate_outcome(const WeightedGraph& g, const VertexSet& u, int t, const DecomposeOutcome& outcome) {
  Report rep;
  if (const auto* w = std::get_if<SubdividedClawWitness>(&outcome)) {
    bool lengths = true;
    for (const auto& leg : w->legs) lengths = lengths && static_cast<int>(leg.size()) == t;
    if (!lengths) rep.add("witness", "legs are not of length t");
    if (!is_induced_subdivided_claw(g, *w)) rep.add("witness", "vertices do not induce the given subdivided claw");
    return rep;
  }
  const auto& pf = std::get<PathFamily>(outcome);
  if (static_cast<int>(pf.paths.size()) > path_count_limit(g.size()))
    rep.add("paths", std::to_string(pf.paths.size()) + " paths exceed the limit of " +
                         std::to_string(path_count_limit(g.size())));
  for (std::size_t i = 0; i < pf.paths.size(); ++i) {
    const Path& p = pf.paths[i];
    const std::string name = "path " + std::to_string(i);
    if (p.empty()) {
      rep.add("paths", name + " is empty");
      continue;
    }
    if (static_cast<int>(p.size()) > t + 2)
      rep.add("paths", name + " has " + std::to_string(p.size()) + " vertices, limit " + std::to_string(t + 2));
    bool in_range = true;
    for (Vertex v : p) in_range = in_range && v >= 0 && v < g.size();
    if (!in_range) {
      rep.add("paths", name + " leaves the graph");
      continue;
    }
    if (normalized(p).size() != p.size()) rep.add("paths", name + " repeats a vertex");
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        if (g.adjacent(p[a], p[b]) != (b == a + 1)) {
          rep.add("paths", name + " is not an induced path");
          a = p.size();
          break;
        }
  }
  if (!rep.ok()) return rep;
  const VertexSet expected = set_difference(all_vertices(g), closed_neighborhood(g, pf.path_vertices()));
  if (pf.remainder != expected) {
    rep.add("remainder", "remainder is not V(G) minus N[X]");
    return rep;
  }
  const WeightedGraph rest = induced_subgraph(g, pf.remainder);
  rep.append(validate_esd(rest, pf.esd, true));
  if (!rep.ok()) return rep;
  std::vector<char> in_u(g.size(), 0);
  for (Vertex v : u)
    if (v >= 0 && v < g.size()) in_u[v] = 1;
  const int allowed = balance_limit(u.size());
  for (const auto& part : particles(pf.esd)) {
    int count = 0;
    for (Vertex v : part.members) count += in_u[pf.remainder[v]];
    if (count > allowed)
      rep.add("balance", std::string("a ") + to_string(part.key.kind) + " particle holds " + std::to_string(count) +
                             " vertices of U, allowed " + std::to_string(allowed));
  }
  return rep;
}

struct ReferenceDecomposerConfig {
  int max_paths = 4;                      // practical cap, below the contract's limit
  std::uint64_t max_candidates = 2'000'000;
};

// Desk-scale stand-in for the full polynomial decomposer. Looks for an induced
// S_{t,t,t} first; otherwise searches unions X of few short induced paths such
// that the components of G - N[X] each hold at most ceil(|U|/2) vertices of U,
// and returns the component decomposition (one isolated pattern vertex per
// component). Stages grow by (p * s, p) for p paths of at most s vertices; within
// the first stage that succeeds the candidate minimizing (|N[N[X]]|, largest U
// count, |X|, X) wins.
class ReferenceDecomposer : public Decomposer {
 public:
  explicit ReferenceDecomposer(ReferenceDecomposerConfig cfg = {}) : cfg_(cfg) {}

  DecomposeOutcome decompose(const WeightedGraph& g, const VertexSet& u, int t) override {
    if (t < 1) throw InputError("decompose: t must be positive");
    for (Vertex v : u)
      if (v < 0 || v >= g.size()) throw InputError("decompose: U is not a subset of V(G)");
    if (auto w = find_induced_sttt(g, t)) return *w;
    Search s(g, u);
    if (s.try_candidate({})) return s.result();

    const auto pool = induced_paths(g, t + 2);
    const int max_p = std::min(cfg_.max_paths, path_count_limit(g.size()));
    std::vector<std::pair<int, int>> stages;
    for (int p = 1; p <= max_p; ++p)
      for (int len = 1; len <= t + 2; ++len) stages.emplace_back(p, len);
    std::stable_sort(stages.begin(), stages.end(), [](auto a, auto b) {
      return std::pair(a.first * a.second, a.first) < std::pair(b.first * b.second, b.first);
    });
    std::uint64_t evaluated = 0;
    for (auto [p, len] : stages) {
      std::vector<std::size_t> usable;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (static_cast<int>(pool[i].size()) <= len) usable.push_back(i);
      std::vector<std::size_t> pick;
      bool any = false;
      auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == p) {
          if (++evaluated > cfg_.max_candidates) throw DecompositionNotFound(s.best_seen(), s.allowed());
          std::vector<Path> paths;
          for (auto i : pick) paths.push_back(pool[usable[i]]);
          any = s.try_candidate(std::move(paths)) || any;
          return;
        }
        for (std::size_t i = from; i < usable.size(); ++i) {
          pick.push_back(i);
          self(self, i + 1);
          pick.pop_back();
        }
      };
      rec(rec, 0);
      if (any) return s.result();
    }
    throw DecompositionNotFound(s.best_seen(), s.allowed());
  }

  // Induced paths with 1..max_vertices vertices, each once (first vertex < last).
  static std::vector<Path> induced_paths(const WeightedGraph& g, int max_vertices) {
    std::vector<Path> out;
    Path cur;
    auto rec = [&](auto&& self) -> void {
      if (cur.size() == 1 || cur.front() < cur.back()) out.push_back(cur);
      if (static_cast<int>(cur.size()) == max_vertices) return;
      const Vertex tail = cur.back();
      for (Vertex v : g.neighbors(tail)) {
        // v may touch the tail only.
        if (std::find(cur.begin(), cur.end(), v) != cur.end()) continue;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i)
          if (g.adjacent(cur[i], v)) ok = false;
        if (!ok) continue;
        cur.push_back(v);
        self(self);
        cur.pop_back();
      }
    };
    for (Vertex s = 0; s < g.size(); ++s) {
      cur = {s};
      rec(rec);
    }
    std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

 private:
  class Search {
   public:
    Search(const WeightedGraph& g, const VertexSet& u) : g_(g), in_u_(g.size(), 0) {
      for (Vertex v : u) in_u_[v] = 1;
      allowed_ = balance_limit(u.size());
    }

    // Evaluates X = union of the paths; true if balanced.
    bool try_candidate(std::vector<Path> paths) {
      VertexSet x;
      for (const auto& p : paths) x.insert(x.end(), p.begin(), p.end());
      x = normalized(std::move(x));
      if (!seen_.insert(x).second) return false;
      const VertexSet nx = closed_neighborhood(g_, x);
      std::vector<char> allowed(g_.size(), 1);
      for (Vertex v : nx) allowed[v] = 0;
      const auto comps = connected_components(g_, &allowed);
      int worst = 0;
      for (const auto& c : comps) {
        int cnt = 0;
        for (Vertex v : c) cnt += in_u_[v];
        worst = std::max(worst, cnt);
      }
      best_seen_ = std::min(best_seen_, worst);
      if (worst > allowed_) return false;
      Key key{closed_neighborhood(g_, nx).size(), worst, x.size(), x};
      if (!have_ || key < best_key_) {
        have_ = true;
        best_key_ = std::move(key);
        best_paths_ = std::move(paths);
        best_components_ = comps;
      }
      return true;
    }

    PathFamily result() const {
      PathFamily pf;
      pf.paths = best_paths_;
      pf.remainder = set_difference(all_vertices(g_), closed_neighborhood(g_, pf.path_vertices()));
      std::vector<Vertex> pos(g_.size(), -1);
      for (std::size_t i = 0; i < pf.remainder.size(); ++i) pos[pf.remainder[i]] = static_cast<Vertex>(i);
      std::vector<VertexSet> parts;
      for (const auto& c : best_components_) {
        VertexSet part;
        for (Vertex v : c) part.push_back(pos[v]);
        parts.push_back(normalized(std::move(part)));
      }
      std::sort(parts.begin(), parts.end());
      pf.esd = component_esd(parts);
      return pf;
    }

    int best_seen() const { return best_seen_ == std::numeric_limits<int>::max() ? -1 : best_seen_; }
    int allowed() const { return allowed_; }

   private:
    struct Key {
      std::size_t second_neighborhood;
      int worst;
      std::size_t size;
      VertexSet x;
      auto operator<=>(const Key&) const = default;
    };

    const WeightedGraph& g_;
    std::vector<char> in_u_;
    int allowed_ = 0;
    int best_seen_ = std::numeric_limits<int>::max();
    std::set<VertexSet> seen_;
    bool have_ = false;
    Key best_key_{};
    std::vector<Path> best_paths_;
    std::vector<VertexSet> best_components_;
  };

  ReferenceDecomposerConfig cfg_;
};

// ------------------------------------------------------------------------ I/O

// Outcome dump, 1-based ids of G:
//   witness <center> : <leg1> | <leg2> | <leg3>
// or
//   path : <v1> <v2> ...        one line per path
//   followed by the ESD format with eta-sets in ids of G.
inline std::string write_outcome(const DecomposeOutcome& outcome) {
  std::ostringstream out;
  if (const auto* w = std::get_if<SubdividedClawWitness>(&outcome)) {
    out << "witness " << w->center + 1 << " :";
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) out << " |";
      for (Vertex v : w->legs[i]) out << ' ' << v + 1;
    }
    out << '\n';
    return out.str();
  }
  const auto& pf = std::get<PathFamily>(outcome);
  for (const auto& p : pf.paths) {
    out << "path :";
    for (Vertex v : p) out << ' ' << v + 1;
    out << '\n';
  }
  out << write_esd(relabel_esd(pf.esd, pf.remainder));
  return out.str();
}

// Parses an outcome dump against g. Structural checks are left to validate_outcome,
// except that eta-sets must avoid N[X].
inline DecomposeOutcome read_outcome(std::string_view text, const WeightedGraph& g) {
  std::vector<Path> paths;
  std::string esd_text;
  std::optional<SubdividedClawWitness> witness;
  io::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    auto toks = io::split_ws(line);
    if (!toks.empty() && (toks[0] == "path" || toks[0] == "witness")) {
      std::size_t colon = 1;
      while (colon < toks.size() && toks[colon] != ":") ++colon;
      if (colon == toks.size()) throw ParseError(lineno, "expected ':'");
      std::vector<std::vector<int>> lists(1);
      for (std::size_t i = colon + 1; i < toks.size(); ++i) {
        if (toks[i] == "|") {
          lists.emplace_back();
          continue;
        }
        lists.back().push_back(io::parse_id_list(std::span(toks).subspan(i, 1), lineno, g.size(), "vertex")[0]);
      }
      if (toks[0] == "path") {
        if (colon != 1 || lists.size() != 1) throw ParseError(lineno, "path line must be 'path : <list>'");
        paths.push_back(lists[0]);
      } else {
        if (colon != 2 || lists.size() != 3) throw ParseError(lineno, "witness line needs a center and three legs");
        SubdividedClawWitness w;
        w.center = io::parse_id_list(std::span(toks).subspan(1, 1), lineno, g.size(), "vertex")[0];
        for (int i = 0; i < 3; ++i) w.legs[i] = lists[i];
        witness = w;
      }
      esd_text.push_back('\n');  // keep line numbers aligned
      return;
    }
    esd_text.append(line);
    esd_text.push_back('\n');
  });
  if (witness) return *witness;
  PathFamily pf;
  pf.paths = std::move(paths);
  pf.remainder = set_difference(all_vertices(g), closed_neighborhood(g, pf.path_vertices()));
  const Esd in_g = parse_esd(esd_text, g.size());
  std::vector<Vertex> pos(g.size(), -1);
  for (std::size_t i = 0; i < pf.remainder.size(); ++i) pos[pf.remainder[i]] = static_cast<Vertex>(i);
  auto check = [&](const VertexSet& s) {
    for (Vertex v : s)
      if (pos[v] < 0) throw ParseError(0, "decomposition uses vertex " + std::to_string(v + 1) + " from N[X]");
  };
  const WeightedGraph& h = in_g.pattern();
  for (Vertex x = 0; x < h.size(); ++x) check(in_g.vertex_set(x));
  for (auto [x, y] : h.edges()) {
    check(in_g.edge_set(x, y));
    check(in_g.edge_end(x, y, x));
    check(in_g.edge_end(x, y, y));
  }
  for (const auto& tr : in_g.triangles()) check(in_g.triangle_set(tr[0], tr[1], tr[2]));
  pf.esd = relabel_esd(in_g, pos);
  return pf;
}

}  // namespace sttt
