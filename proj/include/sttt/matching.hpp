#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sttt/core.hpp"

namespace sttt {

struct AuxEdge {
  int u = 0;
  int v = 0;
  Weight weight = 0;
};

// Edge-weighted simple graph handed to the matcher.
class AuxGraph {
 public:
  AuxGraph() = default;
  explicit AuxGraph(int n) : n_(n) {}

  int add_vertex() { return n_++; }
  std::size_t add_edge(int u, int v, Weight w) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) throw InputError("AuxGraph: bad edge");
    edges_.push_back({u, v, w});
    return edges_.size() - 1;
  }
  int size() const { return n_; }
  const std::vector<AuxEdge>& edges() const { return edges_; }

 private:
  int n_ = 0;
  std::vector<AuxEdge> edges_;
};

struct MatchingResult {
  std::vector<std::size_t> edges;  // indices into AuxGraph::edges(), ascending
  Weight weight = 0;
};

inline bool is_matching(const AuxGraph& g, const std::vector<std::size_t>& edge_ids) {
  std::vector<char> used(g.size(), 0);
  for (std::size_t id : edge_ids) {
    if (id >= g.edges().size()) return false;
    const auto& e = g.edges()[id];
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

namespace detail {

// Edmonds' blossom algorithm for maximum-weight (not maximum-cardinality) matching
// with integer duals, O(n^3). Follows the well-known primal-dual formulation with
// nested blossoms and per-blossom least-slack edge lists.
class Blossom {
 public:
  explicit Blossom(const AuxGraph& g) : nv_(g.size()) {
    for (const auto& e : g.edges()) {
      if (e.weight > (Weight{1} << 60)) throw CapacityError("matching weight too large");
      edges_.push_back({e.u, e.v, static_cast<std::int64_t>(e.weight)});
    }
  }

  std::vector<int> solve() {
    const int ne = static_cast<int>(edges_.size());
    if (nv_ == 0 || ne == 0) return std::vector<int>(nv_, -1);
    std::int64_t maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.w);
    endpoint_.resize(2 * ne);
    for (int p = 0; p < 2 * ne; ++p) endpoint_[p] = p % 2 == 0 ? edges_[p / 2].u : edges_[p / 2].v;
    neighbend_.assign(nv_, {});
    for (int k = 0; k < ne; ++k) {
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }
    mate_.assign(nv_, -1);
    label_.assign(2 * nv_, 0);
    labelend_.assign(2 * nv_, -1);
    inblossom_.resize(nv_);
    for (int i = 0; i < nv_; ++i) inblossom_[i] = i;
    blossomparent_.assign(2 * nv_, -1);
    blossomchilds_.assign(2 * nv_, {});
    blossombase_.assign(2 * nv_, -1);
    for (int i = 0; i < nv_; ++i) blossombase_[i] = i;
    blossomendps_.assign(2 * nv_, {});
    bestedge_.assign(2 * nv_, -1);
    blossombestedges_.assign(2 * nv_, {});
    has_bestedges_.assign(2 * nv_, 0);
    unused_.clear();
    for (int i = nv_; i < 2 * nv_; ++i) unused_.push_back(i);
    dualvar_.assign(2 * nv_, 0);
    for (int i = 0; i < nv_; ++i) dualvar_[i] = maxweight;
    allowedge_.assign(ne, 0);

    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      for (int v = 0; v < nv_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          check(label_[inblossom_[v]] == 1, "queued vertex not S");
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                check(label_[inblossom_[w]] == 2, "expected T blossom");
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        // Dual adjustment.
        int deltatype = 1;
        std::int64_t delta = dualvar_[0];
        for (int v = 1; v < nv_; ++v) delta = std::min(delta, dualvar_[v]);
        int deltaedge = -1, deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t ks = slack(bestedge_[b]);
            check(ks % 2 == 0, "odd slack between S-blossoms");
            const std::int64_t d = ks / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 1)
            dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2)
            dualvar_[v] += delta;
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1)
              dualvar_[b] += delta;
            else if (label_[b] == 2)
              dualvar_[b] -= delta;
          }
        }
        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].u, j = edges_[deltaedge].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          check(label_[inblossom_[i]] == 1, "delta2 edge without S end");
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          const int i = edges_[deltaedge].u;
          check(label_[inblossom_[i]] == 1, "delta3 edge without S end");
          queue_.push_back(i);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = nv_; b < 2 * nv_; ++b)
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
          expand_blossom(b, true);
    }
    std::vector<int> out(nv_, -1);
    for (int v = 0; v < nv_; ++v)
      if (mate_[v] >= 0) out[v] = mate_[v] / 2;  // edge index
    return out;
  }

 private:
  struct E {
    int u, v;
    std::int64_t w;
  };

  static void check(bool ok, const char* what) {
    if (!ok) throw InvariantFailure(std::string("matching: ") + what);
  }

  std::int64_t slack(int k) const { return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].w; }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }
  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    check(label_[w] == 0 && label_[b] == 0, "relabel");
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      check(mate_[base] >= 0, "T blossom base unmatched");
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      check(label_[b] == 1, "scan expects S");
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        check(label_[b] == 2, "scan expects T");
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].u, w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v], bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    check(label_[bb] == 1, "blossom base not S");
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }
    std::vector<int> bestedgeto(2 * nv_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[child]) {
        for (int leaf : leaves(child)) {
          std::vector<int> list;
          for (int p : neighbend_[leaf]) list.push_back(p / 2);
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& list : nblists) {
        for (int kk : list) {
          int i = edges_[kk].u, j = edges_[kk].v;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = 0;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto)
      if (kk != -1) blossombestedges_[b].push_back(kk);
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b])
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& ch = blossomchilds_[b];
      const auto& ep = blossomendps_[b];
      const int len = static_cast<int>(ch.size());
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
      int jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      auto at = [len](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(ep, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(ep, j - endptrick) / 2] = 1;
        j += jstep;
        p = at(ep, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      int bv = at(ch, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (at(ch, j) != entrychild) {
        bv = at(ch, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv))
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        if (found >= 0) {
          check(label_[found] == 2 && inblossom_[found] == bv, "expand relabel");
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    auto& ch = blossomchilds_[b];
    auto& ep = blossomendps_[b];
    const int len = static_cast<int>(ch.size());
    const int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
    int j = i;
    int jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    auto at = [len](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
    while (j != 0) {
      j += jstep;
      t = at(ch, j);
      const int p = at(ep, j - endptrick) ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(ch, j);
      if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch[0]];
    check(blossombase_[b] == v, "augment base");
  }

  void augment_matching(int k) {
    const int v = edges_[k].u, w = edges_[k].v;
    for (auto [s0, p0] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
      int s = s0, p = p0;
      while (true) {
        const int bs = inblossom_[s];
        check(label_[bs] == 1, "augment expects S");
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        check(label_[bt] == 2, "augment expects T");
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        check(blossombase_[bt] == t, "augment T base");
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nv_;
  std::vector<E> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_;
  std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<std::int64_t> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

}  // namespace detail

// Maximum-weight matching of any cardinality. Deterministic for a fixed edge order.
inline MatchingResult max_weight_matching(const AuxGraph& g) {
  MatchingResult r;
  const auto mate = detail::Blossom(g).solve();
  for (int v = 0; v < g.size(); ++v) {
    if (mate[v] < 0) continue;
    const auto& e = g.edges()[mate[v]];
    if (v == e.u) r.edges.push_back(static_cast<std::size_t>(mate[v]));
  }
  std::sort(r.edges.begin(), r.edges.end());
  for (std::size_t id : r.edges) r.weight += g.edges()[id].weight;
  require_invariant(is_matching(g, r.edges), "matcher returned a non-matching");
  return r;
}

// Calls fn(edge ids) for every matching of g, the empty one included.
inline void for_each_matching(const AuxGraph& g, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::vector<std::size_t>> incident(g.size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    incident[g.edges()[i].u].push_back(i);
    incident[g.edges()[i].v].push_back(i);
  }
  std::vector<char> used(g.size(), 0);
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, int v) -> void {
    while (v < g.size() && used[v]) ++v;
    if (v == g.size()) {
      fn(chosen);
      return;
    }
    used[v] = 1;
    self(self, v + 1);  // v unmatched
    for (std::size_t id : incident[v]) {
      const auto& e = g.edges()[id];
      const int other = e.u == v ? e.v : e.u;
      if (used[other]) continue;
      used[other] = 1;
      chosen.push_back(id);
      self(self, v + 1);
      chosen.pop_back();
      used[other] = 0;
    }
    used[v] = 0;
  };
  rec(rec, 0);
}

// Exhaustive matcher; the oracle for max_weight_matching. Guarded to 16 vertices.
inline MatchingResult brute_force_matching(const AuxGraph& g) {
  if (g.size() > 16) throw CapacityError("brute_force_matching: more than 16 vertices");
  MatchingResult best;
  bool have = false;
  for_each_matching(g, [&](const std::vector<std::size_t>& m) {
    Weight w = 0;
    for (std::size_t id : m) w += g.edges()[id].weight;
    if (!have || w > best.weight) {
      best.weight = w;
      best.edges = m;
      have = true;
    }
  });
  std::sort(best.edges.begin(), best.edges.end());
  return best;
}

}  // namespace sttt
