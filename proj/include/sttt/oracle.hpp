#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sttt/graph.hpp"
#include "sttt/profile.hpp"

namespace sttt {

struct OracleBudget {
  int max_vertices = 40;
  int max_terminals = 20;
  std::uint64_t node_cap = 20'000'000;
};

struct MwisResult {
  Weight weight = 0;
  VertexSet witness;
};

namespace detail {

template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  bool test(int i) const { return w[i >> 6] >> (i & 63) & 1; }
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] & o.w[i];
    return r;
  }
  Bits minus(const Bits& o) const {
    Bits r;
    for (int i = 0; i < W; ++i) r.w[i] = w[i] & ~o.w[i];
    return r;
  }
  Bits& operator|=(const Bits& o) {
    for (int i = 0; i < W; ++i) w[i] |= o.w[i];
    return *this;
  }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int i = 0; i < W; ++i)
      for (std::uint64_t x = w[i]; x; x &= x - 1) fn(i * 64 + std::countr_zero(x));
  }
  int first() const {
    for (int i = 0; i < W; ++i)
      if (w[i]) return i * 64 + std::countr_zero(w[i]);
    return -1;
  }
  bool operator==(const Bits&) const = default;
};

template <int W>
struct BitsHash {
  std::size_t operator()(const Bits<W>& b) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : b.w) h = (h ^ x) * 0xff51afd7ed558ccdull, h ^= h >> 32;
    return static_cast<std::size_t>(h);
  }
};

// Exact MWIS on vertex subsets of a fixed graph: branch on a maximum-degree
// vertex, split into connected components, memoize per subset, and skip the
// exclude branch when a greedy clique-cover bound cannot beat the include branch.
template <int W>
class MwisEngine {
 public:
  using Set = Bits<W>;

  MwisEngine(const WeightedGraph& g, std::uint64_t node_cap) : g_(g), node_cap_(node_cap), nbr_(g.size()) {
    for (Vertex v = 0; v < g.size(); ++v)
      for (Vertex u : g.neighbors(v)) nbr_[v].set(u);
  }

  Set full() const {
    Set s;
    for (Vertex v = 0; v < g_.size(); ++v) s.set(v);
    return s;
  }
  const Set& neighbors(Vertex v) const { return nbr_[v]; }

  Weight solve(const Set& allowed) { return entry(allowed).weight; }
  Set witness(const Set& allowed) { return entry(allowed).chosen; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Entry {
    Weight weight = 0;
    Set chosen;
  };

  const Entry& entry(const Set& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    Entry e = compute(s);
    return memo_.emplace(s, e).first->second;
  }

  Entry compute(const Set& s) {
    if (++nodes_ > node_cap_) throw CapacityError("MWIS search exceeded its node budget");
    if (s.none()) return {};
    // Component containing the first vertex.
    Set comp;
    {
      Set frontier;
      const int start = s.first();
      comp.set(start);
      frontier.set(start);
      while (!frontier.none()) {
        Set next;
        frontier.for_each([&](int v) { next |= nbr_[v] & s; });
        next = next.minus(comp);
        comp |= next;
        frontier = next;
      }
    }
    if (!(comp == s)) {
      const Entry& a = entry(comp);
      Entry out = a;
      const Entry& b = entry(s.minus(comp));
      out.weight += b.weight;
      out.chosen |= b.chosen;
      return out;
    }
    int pick = -1, best_deg = -1;
    s.for_each([&](int v) {
      int d = (nbr_[v] & s).count();
      if (d > best_deg) best_deg = d, pick = v;
    });
    if (best_deg == 0) {
      Entry out;
      out.chosen.set(pick);
      out.weight = g_.weight(pick);
      return out;
    }
    Set without_closed = s.minus(nbr_[pick]);
    without_closed.reset(pick);
    Entry inc = entry(without_closed);
    inc.weight += g_.weight(pick);
    inc.chosen.set(pick);
    Set without = s;
    without.reset(pick);
    if (upper_bound(without) <= inc.weight) return inc;
    const Entry& exc = entry(without);
    return exc.weight > inc.weight ? exc : inc;
  }

  // Greedy clique cover: each vertex joins the first clique it is complete to;
  // the bound sums the heaviest weight per clique.
  Weight upper_bound(const Set& s) const {
    std::vector<Set> cliques;
    std::vector<Weight> heaviest;
    s.for_each([&](int v) {
      for (std::size_t c = 0; c < cliques.size(); ++c) {
        if ((cliques[c].minus(nbr_[v])).none()) {
          cliques[c].set(v);
          heaviest[c] = std::max(heaviest[c], g_.weight(v));
          return;
        }
      }
      Set fresh;
      fresh.set(v);
      cliques.push_back(fresh);
      heaviest.push_back(g_.weight(v));
    });
    Weight total = 0;
    for (Weight w : heaviest) total += w;
    return total;
  }

  const WeightedGraph& g_;
  std::uint64_t node_cap_;
  std::uint64_t nodes_ = 0;
  std::vector<Set> nbr_;
  std::unordered_map<Set, Entry, BitsHash<W>> memo_;
};

template <typename Fn>
decltype(auto) with_engine(const WeightedGraph& g, std::uint64_t node_cap, Fn&& fn) {
  if (g.size() <= 64) {
    MwisEngine<1> e(g, node_cap);
    return fn(e);
  }
  if (g.size() <= 128) {
    MwisEngine<2> e(g, node_cap);
    return fn(e);
  }
  if (g.size() <= 256) {
    MwisEngine<4> e(g, node_cap);
    return fn(e);
  }
  throw CapacityError("exact search supports at most 256 vertices");
}

template <typename Set>
VertexSet to_vertex_set(const Set& s) {
  VertexSet out;
  s.for_each([&](int v) { out.push_back(v); });
  return out;
}

inline void check_budget(const WeightedGraph& g, std::size_t terminals, const OracleBudget& b) {
  if (g.size() > b.max_vertices)
    throw CapacityError("brute force limited to " + std::to_string(b.max_vertices) + " vertices, got " +
                        std::to_string(g.size()));
  if (static_cast<int>(terminals) > b.max_terminals)
    throw CapacityError("brute force limited to " + std::to_string(b.max_terminals) + " terminals, got " +
                        std::to_string(terminals));
}

}  // namespace detail

inline MwisResult mwis_bruteforce(const WeightedGraph& g, const OracleBudget& budget = {}) {
  detail::check_budget(g, 0, budget);
  MwisResult r = detail::with_engine(g, budget.node_cap, [&](auto& e) {
    auto all = e.full();
    return MwisResult{e.solve(all), detail::to_vertex_set(e.witness(all))};
  });
  require_invariant(g.is_independent(r.witness) && g.weight_of(r.witness) == r.weight,
                    "oracle witness does not match its weight");
  return r;
}

// Exact profile: f(I_T) = max weight of an independent I with I cap T = I_T.
inline BorderProfile brute_force_border(const WeightedGraph& g, const VertexSet& terminals,
                                        const OracleBudget& budget = {}) {
  detail::check_budget(g, terminals.size(), budget);
  for (Vertex v : terminals)
    if (v < 0 || v >= g.size()) throw InputError("brute_force_border: terminal outside the graph");
  BorderProfile p(labels_of(g, terminals), budget.max_terminals);
  const auto by_bit = terminal_vertices(g, p);
  detail::with_engine(g, budget.node_cap, [&](auto& e) {
    auto base = e.full();
    for (Vertex t : by_bit) base.reset(t);
    for (Mask m : independent_masks(g, by_bit)) {
      auto allowed = base;
      Weight w = 0;
      for (std::size_t i = 0; i < by_bit.size(); ++i)
        if (m >> i & 1) {
          allowed = allowed.minus(e.neighbors(by_bit[i]));
          w += g.weight(by_bit[i]);
        }
      p.set(m, Score(w + e.solve(allowed)));
    }
    return 0;
  });
  return p;
}

// An optimal independent set for one profile cell; nullopt when the cell is -inf.
inline std::optional<VertexSet> border_cell_witness(const WeightedGraph& g, const VertexSet& terminals,
                                                    const VertexSet& chosen, const OracleBudget& budget = {}) {
  detail::check_budget(g, terminals.size(), budget);
  if (!is_subset(chosen, terminals)) throw InputError("border_cell_witness: chosen set is not a terminal subset");
  if (!g.is_independent(chosen)) return std::nullopt;
  return detail::with_engine(g, budget.node_cap, [&](auto& e) {
    auto allowed = e.full();
    for (Vertex t : terminals) allowed.reset(t);
    for (Vertex v : chosen) allowed = allowed.minus(e.neighbors(v));
    VertexSet rest = detail::to_vertex_set(e.witness(allowed));
    return std::optional<VertexSet>(set_union(rest, chosen));
  });
}

// Compares a profile cell by cell against brute force; mismatches are reported.
inline Report verify_solution(const WeightedGraph& g, const VertexSet& terminals, const BorderProfile& profile,
                              const OracleBudget& budget = {}) {
  Report rep;
  const BorderProfile truth = brute_force_border(g, terminals, budget);
  if (truth.terminals() != profile.terminals()) {
    rep.add("terminals", "profile terminals differ from the requested terminal set");
    return rep;
  }
  for (Mask m = 0; m < truth.size(); ++m)
    if (!(truth[m] == profile[m]))
      rep.add("mismatch", "mask " + std::to_string(m) + ": expected " + truth[m].to_string() + ", got " +
                              profile[m].to_string());
  return rep;
}

}  // namespace sttt
