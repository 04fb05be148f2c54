#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sttt/graph.hpp"
#include "sttt/graph_io.hpp"

namespace sttt {

using Mask = std::uint64_t;

inline constexpr int kDefaultMaxTerminals = 26;

// f_{G,w,T}: one cell per subset of T. Terminals are kept as labels in ascending
// order; bit i of a mask stands for terminals()[i].
class BorderProfile {
 public:
  BorderProfile() : table_(1) {}
  explicit BorderProfile(std::vector<Label> terminals, int max_terminals = kDefaultMaxTerminals)
      : terminals_(std::move(terminals)) {
    std::sort(terminals_.begin(), terminals_.end());
    if (std::adjacent_find(terminals_.begin(), terminals_.end()) != terminals_.end())
      throw InputError("BorderProfile: duplicate terminal");
    if (static_cast<int>(terminals_.size()) > std::min(max_terminals, 40))
      throw CapacityError("profile with " + std::to_string(terminals_.size()) + " terminals exceeds the cap of " +
                          std::to_string(std::min(max_terminals, 40)));
    table_.assign(std::size_t{1} << terminals_.size(), Score::neg_inf());
  }

  const std::vector<Label>& terminals() const { return terminals_; }
  int num_terminals() const { return static_cast<int>(terminals_.size()); }
  std::size_t size() const { return table_.size(); }

  Score operator[](Mask m) const { return table_.at(m); }
  void set(Mask m, Score s) { table_.at(m) = s; }
  bool raise(Mask m, Score s) { return table_.at(m).raise_to(s); }

  int bit_of(Label l) const {
    auto it = std::lower_bound(terminals_.begin(), terminals_.end(), l);
    if (it == terminals_.end() || *it != l) return -1;
    return static_cast<int>(it - terminals_.begin());
  }
  Mask mask_of(std::span<const Label> labels) const {
    Mask m = 0;
    for (Label l : labels) {
      int b = bit_of(l);
      if (b < 0) throw InputError("label " + std::to_string(l) + " is not a terminal");
      m |= Mask{1} << b;
    }
    return m;
  }
  std::vector<Label> labels_of(Mask m) const {
    std::vector<Label> out;
    for (int i = 0; i < num_terminals(); ++i)
      if (m >> i & 1) out.push_back(terminals_[i]);
    return out;
  }

  friend bool operator==(const BorderProfile&, const BorderProfile&) = default;

 private:
  std::vector<Label> terminals_;
  std::vector<Score> table_;
};

// Labels of a vertex set of g, ascending.
inline std::vector<Label> labels_of(const WeightedGraph& g, const VertexSet& s) {
  std::vector<Label> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(g.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

// Vertex of g behind each terminal bit of p.
inline std::vector<Vertex> terminal_vertices(const WeightedGraph& g, const BorderProfile& p) {
  std::vector<Vertex> out;
  for (Label l : p.terminals()) {
    auto v = g.find_label(l);
    if (!v) throw ContractViolation("profile terminal " + std::to_string(l) + " is not a vertex of the graph");
    out.push_back(*v);
  }
  return out;
}

inline VertexSet vertices_of_mask(const std::vector<Vertex>& by_bit, Mask m) {
  VertexSet out;
  for (std::size_t i = 0; i < by_bit.size(); ++i)
    if (m >> i & 1) out.push_back(by_bit[i]);
  return normalized(std::move(out));
}

// Bits of the subsets of the terminals that are independent in g, ascending.
inline std::vector<Mask> independent_masks(const WeightedGraph& g, const std::vector<Vertex>& by_bit) {
  const int k = static_cast<int>(by_bit.size());
  std::vector<Mask> conflict(k, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j && g.adjacent(by_bit[i], by_bit[j])) conflict[i] |= Mask{1} << j;
  std::vector<Mask> out;
  auto rec = [&](auto&& self, int i, Mask m, Mask blocked) -> void {
    if (i == k) {
      out.push_back(m);
      return;
    }
    self(self, i + 1, m, blocked);
    if (!(blocked >> i & 1)) self(self, i + 1, m | Mask{1} << i, blocked | conflict[i]);
  };
  rec(rec, 0, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// f finite exactly on independent subsets, and f(I_T) >= w(I_T) there.
inline Report check_profile_sanity(const WeightedGraph& g, const BorderProfile& p) {
  Report rep;
  const auto by_bit = terminal_vertices(g, p);
  for (Mask m = 0; m < p.size(); ++m) {
    const VertexSet s = vertices_of_mask(by_bit, m);
    const bool indep = g.is_independent(s);
    if (indep != p[m].is_finite()) {
      rep.add("profile", "mask " + std::to_string(m) + (indep ? " independent but -inf" : " dependent but finite"));
    } else if (indep && p[m].value() < g.weight_of(s)) {
      rep.add("profile", "mask " + std::to_string(m) + " below the weight of its own terminals");
    }
  }
  return rep;
}

// Text dump: "c terminals <labels...>" then "<bitmask> <weight|-inf>" per subset.
inline std::string write_profile(const BorderProfile& p) {
  std::ostringstream out;
  out << "c terminals";
  for (Label l : p.terminals()) out << ' ' << l;
  out << '\n';
  for (Mask m = 0; m < p.size(); ++m) out << m << ' ' << p[m] << '\n';
  return out.str();
}

inline BorderProfile read_profile(std::string_view text) {
  std::vector<Label> terminals;
  std::vector<std::pair<Mask, Score>> cells;
  std::size_t last = 0;
  io::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    last = lineno;
    auto toks = io::split_ws(line);
    if (toks.empty()) return;
    if (toks[0] == "c") {
      if (toks.size() >= 2 && toks[1] == "terminals")
        for (std::size_t i = 2; i < toks.size(); ++i) terminals.push_back(io::parse_uint(toks[i], lineno, "label"));
      return;
    }
    if (toks.size() != 2) throw ParseError(lineno, "profile line must be '<bitmask> <weight|-inf>'");
    Mask m = io::parse_uint(toks[0], lineno, "bitmask");
    Score s = toks[1] == "-inf" ? Score::neg_inf() : Score(io::parse_uint(toks[1], lineno, "weight"));
    cells.emplace_back(m, s);
  });
  BorderProfile p(terminals);
  if (cells.size() != p.size()) throw ParseError(last, "profile needs one line per subset");
  std::vector<char> seen(p.size(), 0);
  for (auto [m, s] : cells) {
    if (m >= p.size() || seen[m]) throw ParseError(last, "bad or repeated bitmask " + std::to_string(m));
    seen[m] = 1;
    p.set(m, s);
  }
  return p;
}

}  // namespace sttt
