#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "sttt/oracle.hpp"
#include "sttt/patterns.hpp"
#include "sttt/profile.hpp"

namespace sttt {

struct CallRecord {
  int depth = 0;
  int n = 0;
  int terminals = 0;
  bool u_is_all = true;  // U = V(G') rather than the terminal-based choice
  int x = 0;
  int particles = 0;
  bool leaf = false;
};

struct BranchRecord {
  int depth = 0;
  Mask j = 0;
  int dirty = 0;
  int touched = 0;
  int y = 0;
  int z = 0;
};

// One line per call or branch, in execution order.
class RecursionTrace {
 public:
  // Returns a handle for update().
  std::size_t add(const CallRecord& r) {
    calls_.push_back(r);
    lines_.push_back(line(r));
    call_lines_.push_back(lines_.size() - 1);
    return calls_.size() - 1;
  }
  void update(std::size_t handle, const CallRecord& r) {
    calls_.at(handle) = r;
    lines_.at(call_lines_.at(handle)) = line(r);
  }
  void add(const BranchRecord& r) {
    branches_.push_back(r);
    lines_.push_back("branch J=" + std::to_string(r.j) + " dirty=" + std::to_string(r.dirty) +
                     " touched=" + std::to_string(r.touched) + " |Y|=" + std::to_string(r.y) +
                     " |Z|=" + std::to_string(r.z));
  }

  const std::vector<CallRecord>& calls() const { return calls_; }
  const std::vector<BranchRecord>& branches() const { return branches_; }
  const std::vector<std::string>& lines() const { return lines_; }

  int max_depth() const {
    int d = 0;
    for (const auto& c : calls_) d = std::max(d, c.depth);
    return d;
  }
  std::size_t leaves() const {
    std::size_t k = 0;
    for (const auto& c : calls_) k += c.leaf;
    return k;
  }
  // A call that decomposed and combined instead of going to brute force.
  bool recursed() const {
    for (const auto& c : calls_)
      if (!c.leaf) return true;
    return false;
  }
  void write(std::ostream& os) const {
    for (const auto& l : lines_) os << l << '\n';
  }

 private:
  static std::string line(const CallRecord& r) {
    return "call depth=" + std::to_string(r.depth) + " n=" + std::to_string(r.n) +
           " |T|=" + std::to_string(r.terminals) + " U=" + (r.u_is_all ? "V" : "T") + " |X|=" + std::to_string(r.x) +
           " particles=" + std::to_string(r.particles) + " leaf=" + (r.leaf ? "1" : "0");
  }

  std::vector<std::size_t> call_lines_;
  std::vector<CallRecord> calls_;
  std::vector<BranchRecord> branches_;
  std::vector<std::string> lines_;
};

// Raised inside the recursion when a decomposition returns an induced claw; the
// legs are labels so that the root can translate them.
struct ClawFound {
  Label center;
  std::array<std::vector<Label>, 3> legs;

  static ClawFound from(const WeightedGraph& g, const SubdividedClawWitness& w) {
    ClawFound c{g.label(w.center), {}};
    for (int i = 0; i < 3; ++i)
      for (Vertex v : w.legs[i]) c.legs[i].push_back(g.label(v));
    return c;
  }
  SubdividedClawWitness in(const WeightedGraph& root) const {
    auto id = [&](Label l) {
      auto v = root.find_label(l);
      if (!v) throw ContractViolation("claw vertex missing from the root graph");
      return *v;
    };
    SubdividedClawWitness w;
    w.center = id(center);
    for (int i = 0; i < 3; ++i)
      for (Label l : legs[i]) w.legs[i].push_back(id(l));
    return w;
  }
};

// ceil(scale * ceil(11 log2 n + 6) * (t + 2)), at least 1.
inline int compute_ell(int n, int t, double ell_scale) {
  if (n < 1) throw InputError("compute_ell: n must be positive");
  if (!(ell_scale > 0)) throw InputError("compute_ell: ell_scale must be positive");
  const double lg = n > 1 ? std::log2(static_cast<double>(n)) : 0.0;
  const double base = std::ceil(11.0 * lg + 6.0 - 1e-9) * (t + 2);
  return std::max(1, static_cast<int>(std::ceil(ell_scale * base - 1e-9)));
}

inline int depth_limit(int n) { return 2 * ceil_log2(static_cast<std::size_t>(std::max(n, 1))); }

// Exact leaf profile.
inline BorderProfile leaf_profile(const WeightedGraph& g, const VertexSet& terminals, int max_terminals,
                                  std::uint64_t node_cap) {
  return brute_force_border(g, terminals, OracleBudget{256, max_terminals, node_cap});
}

inline VertexSet leaf_witness(const WeightedGraph& g, const VertexSet& terminals, const VertexSet& chosen,
                              int max_terminals, std::uint64_t node_cap) {
  auto w = border_cell_witness(g, terminals, chosen, OracleBudget{256, max_terminals, node_cap});
  require_invariant(w.has_value(), "witness requested for a -inf cell");
  return *w;
}

// Vertex of a fold pool: the bits it sets per channel and its signed weight gain.
struct FoldVertex {
  Vertex v = -1;
  std::vector<std::pair<int, Mask>> bits;
  std::int64_t gain = 0;
};

// Calls fn(masks, gain, chosen) for every independent subset of the pool, where
// masks[c] ORs the channel-c bits and chosen lists pool indices.
template <typename Fn>
void for_each_independent(const WeightedGraph& g, const std::vector<FoldVertex>& pool, int channels, Fn&& fn) {
  const std::size_t k = pool.size();
  std::vector<std::vector<std::size_t>> later(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.adjacent(pool[i].v, pool[j].v)) later[i].push_back(j);
  std::vector<int> blocked(k, 0);
  std::vector<Mask> masks(channels, 0);
  std::vector<std::size_t> chosen;
  std::int64_t gain = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      fn(static_cast<const std::vector<Mask>&>(masks), gain, static_cast<const std::vector<std::size_t>&>(chosen));
      return;
    }
    self(self, i + 1);
    if (blocked[i]) return;
    std::vector<Mask> saved = masks;
    for (auto [c, b] : pool[i].bits) masks[c] |= b;
    gain += pool[i].gain;
    chosen.push_back(i);
    for (std::size_t j : later[i]) ++blocked[j];
    self(self, i + 1);
    for (std::size_t j : later[i]) --blocked[j];
    chosen.pop_back();
    gain -= pool[i].gain;
    masks = std::move(saved);
  };
  rec(rec, 0);
}

// Bit of vertex v of g in profile p, as a mask (0 if v is no terminal of p).
inline Mask bit_in(const BorderProfile& p, const WeightedGraph& g, Vertex v) {
  const int b = p.bit_of(g.label(v));
  return b < 0 ? 0 : Mask{1} << b;
}

// Ids in `to` of vertices of `from` (both share labels).
inline VertexSet translate(const WeightedGraph& from, const WeightedGraph& to, const VertexSet& s) {
  VertexSet out;
  out.reserve(s.size());
  for (Vertex v : s) {
    auto u = to.find_label(from.label(v));
    if (!u) throw ContractViolation("vertex missing while translating between subgraphs");
    out.push_back(*u);
  }
  return normalized(std::move(out));
}

// Mask of a vertex set (ids of g) in profile p; every vertex must be a terminal.
inline Mask mask_of_set(const BorderProfile& p, const WeightedGraph& g, const VertexSet& s) {
  Mask m = 0;
  for (Vertex v : s) {
    const Mask b = bit_in(p, g, v);
    require_invariant(b != 0, "vertex is not a terminal of the profile");
    m |= b;
  }
  return m;
}

}  // namespace sttt
