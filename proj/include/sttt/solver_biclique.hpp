#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "sttt/combine.hpp"
#include "sttt/decomposer.hpp"
#include "sttt/recursion.hpp"
#include "sttt/solver_degree.hpp"
#include "sttt/treedec.hpp"

namespace sttt {

struct BicliqueSolverConfig {
  int t = 2;
  int k = 2;
  double ell_scale = 1.0;
  std::optional<int> leaf_cap_override;  // replaces 32 k^5 ell as the leaf size
  bool trace = false;
  int max_terminals = kDefaultMaxTerminals;
  bool check_profiles = false;
  std::uint64_t leaf_node_cap = 500'000'000;
  WeissauerBudget td_budget;
};

inline std::int64_t pow5(int k) { return static_cast<std::int64_t>(k) * k * k * k * k; }

// The chosen sink node of the tree decomposition and what hangs off its bag.
struct BagContext {
  int node = -1;
  VertexSet bag;                          // B
  std::vector<VertexSet> components;      // components of G' - B
  std::vector<VertexSet> neighborhoods;   // N(C) per component
  VertexSet high;                         // Q: degree above 2k(k-1) in G^B
};

// Orients every tree edge toward the side holding more of U (ties toward the
// smaller node id), takes the smallest node without outgoing edges and builds
// G^B = G'[B] plus a clique on every N(C).
inline BagContext choose_sink_node(const WeightedGraph& g, const TreeDecomposition& td, const VertexSet& u, int k,
                                   InvariantStats* stats = nullptr) {
  if (td.num_nodes() == 0) throw InputError("choose_sink_node: empty tree decomposition");
  const auto in_u = membership(g.size(), u);
  auto u_count = [&](const VertexSet& s) {
    int c = 0;
    for (Vertex v : s) c += in_u[v];
    return c;
  };
  std::vector<int> out_degree(td.num_nodes(), 0);
  for (auto [s, t] : td.tree_edges()) {
    const int at_s = u_count(td.side_vertices(t, s)), at_t = u_count(td.side_vertices(s, t));
    const int head = at_s > at_t ? s : at_t > at_s ? t : std::min(s, t);
    ++out_degree[head == s ? t : s];
  }
  BagContext ctx;
  for (int x = 0; x < td.num_nodes() && ctx.node < 0; ++x)
    if (out_degree[x] == 0) ctx.node = x;
  require_invariant(ctx.node >= 0, "oriented tree has no sink");
  ctx.bag = td.bag(ctx.node);

  std::vector<char> outside(g.size(), 1);
  for (Vertex v : ctx.bag) outside[v] = 0;
  ctx.components = connected_components(g, &outside);
  const int cap = weissauer_degree_cap(k);
  if (stats) ++stats->bag;
  for (const auto& c : ctx.components) {
    ctx.neighborhoods.push_back(open_neighborhood(g, c));
    if (static_cast<int>(ctx.neighborhoods.back().size()) >= k)
      throw ContractViolation("component neighbourhood of size " + std::to_string(ctx.neighborhoods.back().size()) +
                              " is not below k = " + std::to_string(k));
    require_invariant(2 * u_count(c) <= static_cast<int>(u.size()),
                      "a component off the sink bag holds over half of U");
  }

  // Degrees in G^B.
  const auto pos = [&](Vertex v) { return std::lower_bound(ctx.bag.begin(), ctx.bag.end(), v) - ctx.bag.begin(); };
  std::vector<VertexSet> gb(ctx.bag.size());
  for (std::size_t i = 0; i < ctx.bag.size(); ++i)
    for (Vertex w : g.neighbors(ctx.bag[i]))
      if (!outside[w]) gb[i].push_back(w);
  for (const auto& nc : ctx.neighborhoods)
    for (Vertex a : nc)
      for (Vertex b : nc)
        if (a != b) gb[pos(a)].push_back(b);
  for (std::size_t i = 0; i < ctx.bag.size(); ++i)
    if (static_cast<int>(normalized(gb[i]).size()) > cap) ctx.high.push_back(ctx.bag[i]);
  if (static_cast<int>(ctx.high.size()) > k)
    throw ContractViolation(std::to_string(ctx.high.size()) + " vertices of G^B exceed degree " +
                            std::to_string(cap) + ", more than k = " + std::to_string(k));
  return ctx;
}

struct Classification {
  std::vector<char> dirty, touched;  // per component of the bag context
  VertexSet y, z;                    // ids of G'
};

// Dirty: N[C] meets N_{G^J}[X]. Touched: dirty, or N(C) meets Y. `vj` is
// V(G^J) and `nx` is N_{G^J}[X], both in ids of G'.
inline Classification classify_components(const WeightedGraph& g, const BagContext& ctx, const VertexSet& vj,
                                          const VertexSet& nx, std::size_t x_size, int k,
                                          InvariantStats* stats = nullptr) {
  Classification cl;
  const std::size_t m = ctx.components.size();
  cl.dirty.assign(m, 0);
  cl.touched.assign(m, 0);
  const std::int64_t deg = weissauer_degree_cap(k) + 1;
  const VertexSet nx_b = set_intersection(nx, ctx.bag);
  if (stats) ++stats->x_neighborhood;
  require_invariant(static_cast<std::int64_t>(nx_b.size()) <= deg * static_cast<std::int64_t>(x_size),
                    "|N[X] cap B| exceeds (2k(k-1)+1)|X|");

  cl.y = nx_b;
  for (std::size_t i = 0; i < m; ++i) {
    const VertexSet closed = set_union(ctx.components[i], ctx.neighborhoods[i]);
    if (!set_intersection(closed, nx).empty()) {
      cl.dirty[i] = 1;
      cl.y = set_union(cl.y, set_intersection(ctx.neighborhoods[i], vj));
    }
  }
  if (stats) ++stats->y_bound;
  require_invariant(static_cast<std::int64_t>(cl.y.size()) <= 4 * pow5(k) / k * static_cast<std::int64_t>(x_size),
                    "|Y| exceeds 4k^4 |X|");

  // N_{G^J}[Y] cap B.
  const auto in_vj = membership(g.size(), vj);
  VertexSet ny;
  for (Vertex v : cl.y) {
    ny.push_back(v);
    for (Vertex w : g.neighbors(v))
      if (in_vj[w]) ny.push_back(w);
  }
  cl.z = set_intersection(normalized(ny), ctx.bag);
  for (std::size_t i = 0; i < m; ++i) {
    cl.touched[i] = cl.dirty[i] || !set_intersection(ctx.neighborhoods[i], cl.y).empty();
    if (cl.touched[i]) cl.z = set_union(cl.z, set_intersection(ctx.neighborhoods[i], vj));
  }
  if (stats) ++stats->z_bound;
  require_invariant(static_cast<std::int64_t>(cl.z.size()) <= deg * static_cast<std::int64_t>(cl.y.size()),
                    "|Z| exceeds (2k(k-1)+1)|Y|");
  require_invariant(static_cast<std::int64_t>(cl.z.size()) <= 8 * pow5(k) * static_cast<std::int64_t>(x_size),
                    "|Z| exceeds 8k^5 |X|");
  return cl;
}

// Border MWIS on S_{t,t,t}-free graphs without a K_{t,t} subgraph. A call builds
// a tree decomposition, takes the sink bag B, branches over independent J of the
// high-degree set Q, and per branch solves touched components separately from
// the decomposed rest G^Y before folding everything back together.
class BicliqueSolver {
 public:
  BicliqueSolver(const WeightedGraph& root, BicliqueSolverConfig cfg, Decomposer* decomposer = nullptr,
                 RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr)
      : cfg_(cfg), trace_(trace), stats_(stats ? stats : &own_stats_) {
    if (cfg_.t < 1) throw InputError("biclique solver: t must be positive");
    if (cfg_.k < 2) throw InputError("biclique solver: k must be at least 2");
    if (!(cfg_.ell_scale > 0)) throw InputError("biclique solver: ell_scale must be positive");
    if (cfg_.leaf_cap_override && *cfg_.leaf_cap_override < 1)
      throw InputError("biclique solver: leaf cap must be positive");
    n_root_ = root.size();
    ell_ = compute_ell(std::max(n_root_, 1), cfg_.t, cfg_.ell_scale);
    if (!decomposer) {
      own_decomposer_ = std::make_unique<ReferenceDecomposer>();
      decomposer = own_decomposer_.get();
    }
    decomposer_ = decomposer;
  }

  int ell() const { return ell_; }
  std::int64_t leaf_cap() const { return cfg_.leaf_cap_override.value_or(32 * pow5(cfg_.k) * ell_); }
  std::int64_t terminal_cap() const { return 32 * pow5(cfg_.k) * ell_; }
  std::int64_t u_switch() const { return 24 * pow5(cfg_.k) * ell_; }

  BorderProfile profile(const WeightedGraph& g, const VertexSet& terminals) { return profile(g, terminals, 0, trace_); }

  VertexSet witness(const WeightedGraph& g, const VertexSet& terminals, const VertexSet& chosen) {
    return witness(g, terminals, chosen, 0);
  }

 private:
  // Everything one branch J needs for its fold, in ids of G'.
  struct Branch {
    VertexSet j;
    VertexSet vj, y, z;
    std::vector<std::size_t> touched;  // component indices
    std::vector<WeightedGraph> comp_graphs;
    std::vector<VertexSet> comp_terms;
    std::vector<BorderProfile> comp_profiles;
    WeightedGraph gy;
    Esd esd_y;
    VertexSet ty;  // T^Y in ids of gy
    std::vector<WeightedGraph> part_graphs;
    std::vector<VertexSet> part_terms;
    std::vector<BorderProfile> part_profiles;
    BorderProfile fy;
  };

  struct Call {
    bool leaf = true;
    BagContext ctx;
    std::vector<VertexSet> branches;  // the independent subsets J of Q
  };

  BorderProfile profile(const WeightedGraph& g, const VertexSet& terminals_in, int depth, RecursionTrace* trace) {
    const VertexSet terminals = normalized(terminals_in);
    std::optional<std::size_t> handle;
    CallRecord rec;
    const Call call = begin(g, terminals, depth, trace, rec, handle);
    if (call.leaf) return finish(g, leaf_profile(g, terminals, cfg_.max_terminals, cfg_.leaf_node_cap));
    BorderProfile out(labels_of(g, terminals), cfg_.max_terminals);
    for (const VertexSet& j : call.branches) {
      const auto br = branch(g, terminals, call.ctx, j, depth, trace, rec);
      if (trace && handle) trace->update(*handle, rec);
      fold(g, terminals, call.ctx, *br, [&](Mask cell, Score s, const VertexSet&) { out.raise(cell, s); });
    }
    return finish(g, out);
  }

  VertexSet witness(const WeightedGraph& g, const VertexSet& terminals_in, const VertexSet& chosen, int depth) {
    const VertexSet terminals = normalized(terminals_in);
    std::optional<std::size_t> handle;
    CallRecord rec;
    const Call call = begin(g, terminals, depth, nullptr, rec, handle);
    if (call.leaf) return leaf_witness(g, terminals, chosen, cfg_.max_terminals, cfg_.leaf_node_cap);
    const BorderProfile shape(labels_of(g, terminals), cfg_.max_terminals);
    const Mask target = mask_of_set(shape, g, chosen);
    Score best = Score::neg_inf();
    VertexSet best_i;
    std::unique_ptr<Branch> best_br;
    for (const VertexSet& j : call.branches) {
      auto br = branch(g, terminals, call.ctx, j, depth, nullptr, rec);
      bool improved = false;
      fold(g, terminals, call.ctx, *br, [&](Mask cell, Score s, const VertexSet& in) {
        if (cell == target && best.raise_to(s)) best_i = in, improved = true;
      });
      if (improved) best_br = std::move(br);
    }
    require_invariant(best.is_finite() && best_br, "witness requested for a -inf cell");
    const Branch& br = *best_br;

    VertexSet out = set_union(br.j, set_intersection(best_i, br.y));
    // G^Y part.
    {
      const VertexSet in_y = translate(g, br.gy, set_intersection(best_i, vertices_in(g, br.gy)));
      Combiner comb(br.gy, br.ty, br.esd_y, br.part_profiles, stats_, cfg_.max_terminals);
      const CombinationPlan plan = comb.plan(mask_of_set(br.fy, br.gy, set_intersection(in_y, br.ty)));
      const auto matching = max_weight_matching(plan.aux);
      const VertexSet w_y = comb.reconstruct_witness(plan, matching.edges, [&](std::size_t i, Mask cell) {
        const WeightedGraph& child = br.part_graphs[i];
        const VertexSet c = vertices_of_mask(terminal_vertices(child, br.part_profiles[i]), cell);
        return translate(child, br.gy, witness(child, br.part_terms[i], c, depth + 1));
      });
      out = set_union(out, translate(br.gy, g, w_y));
    }
    for (std::size_t i = 0; i < br.touched.size(); ++i) {
      const WeightedGraph& gc = br.comp_graphs[i];
      const VertexSet c = translate(g, gc, set_intersection(best_i, vertices_in(g, gc)));
      out = set_union(out, translate(gc, g, witness(gc, br.comp_terms[i], c, depth + 1)));
    }
    ++stats_->witness;
    require_invariant(g.is_independent(out), "witness is not independent");
    require_invariant(set_intersection(out, terminals) == normalized(chosen),
                      "witness disagrees with the requested terminal cell");
    require_invariant(Score(g.weight_of(out)) == best, "witness weight differs from the profile value");
    return out;
  }

  // Ids in g of the vertices of sub.
  static VertexSet vertices_in(const WeightedGraph& g, const WeightedGraph& sub) {
    return translate(sub, g, all_vertices(sub));
  }

  Call begin(const WeightedGraph& g, const VertexSet& terminals, int depth, RecursionTrace* trace, CallRecord& rec,
             std::optional<std::size_t>& handle) {
    Call call;
    ++stats_->terminal_size;
    require_invariant(static_cast<std::int64_t>(terminals.size()) <= terminal_cap(),
                      "terminal set of size " + std::to_string(terminals.size()) + " exceeds 32 k^5 ell = " +
                          std::to_string(terminal_cap()));
    ++stats_->depth;
    require_invariant(depth <= depth_limit(n_root_),
                      "recursion depth " + std::to_string(depth) + " exceeds 2 ceil(log2 n)");
    rec = CallRecord{depth, g.size(), static_cast<int>(terminals.size()), true, 0, 0, true};
    const int nonterminals = g.size() - static_cast<int>(terminals.size());
    if (g.size() <= leaf_cap() || nonterminals <= 1) {
      if (trace) trace->add(rec);
      return call;
    }
    call.leaf = false;
    rec.leaf = false;
    rec.u_is_all = static_cast<std::int64_t>(terminals.size()) <= u_switch();
    const VertexSet u = rec.u_is_all ? set_difference(all_vertices(g), terminals) : terminals;
    if (trace) handle = trace->add(rec);

    const TreeDecomposition td = build_weissauer(g, cfg_.k, cfg_.td_budget);
    call.ctx = choose_sink_node(g, td, u, cfg_.k, stats_);
    // Independent subsets of Q; |Q| <= k keeps this tiny.
    const VertexSet& q = call.ctx.high;
    for (Mask m = 0; m < (Mask{1} << q.size()); ++m) {
      VertexSet j;
      for (std::size_t i = 0; i < q.size(); ++i)
        if (m >> i & 1) j.push_back(q[i]);
      if (g.is_independent(j)) call.branches.push_back(j);
    }
    return call;
  }

  std::unique_ptr<Branch> branch(const WeightedGraph& g, const VertexSet& terminals, const BagContext& ctx,
                                 const VertexSet& j, int depth, RecursionTrace* trace, CallRecord& rec) {
    auto br = std::make_unique<Branch>();
    br->j = j;
    br->vj = set_difference(set_difference(all_vertices(g), ctx.high), open_neighborhood(g, j));
    const WeightedGraph gj = induced_subgraph(g, br->vj);
    const VertexSet tj = set_intersection(terminals, br->vj);
    const bool first_case = static_cast<std::int64_t>(terminals.size()) <= u_switch();
    const VertexSet uj = first_case ? set_difference(br->vj, terminals) : tj;

    DecomposeOutcome outcome = decomposer_->decompose(gj, translate(g, gj, uj), cfg_.t);
    if (auto* w = std::get_if<SubdividedClawWitness>(&outcome)) throw ClawFound::from(gj, *w);
    PathFamily& pf = std::get<PathFamily>(outcome);
    const VertexSet x = translate(gj, g, pf.path_vertices());
    const VertexSet nx = translate(gj, g, closed_neighborhood(gj, pf.path_vertices()));
    const WeightedGraph rest = induced_subgraph(gj, pf.remainder);
    {
      const Report valid = validate_esd(rest, pf.esd);
      require_invariant(valid.ok(), "decomposer returned an invalid decomposition: " + valid.to_string());
    }
    ++stats_->pattern_degree;
    require_invariant(check_pattern_degree(rest, pf.esd, clique_number(gj) + 1),
                      "pattern degree exceeds the clique number");
    ++stats_->occurrence;
    require_invariant(occurrence_bound(rest, pf.esd) <= occurrence_limit(pf.esd),
                      "a vertex lies in too many particles");

    const Classification cl = classify_components(g, ctx, br->vj, nx, x.size(), cfg_.k, stats_);
    br->y = cl.y;
    br->z = cl.z;
    VertexSet removed = br->y;
    int dirty = 0;
    for (std::size_t i = 0; i < ctx.components.size(); ++i) {
      dirty += cl.dirty[i];
      if (!cl.touched[i]) continue;
      br->touched.push_back(i);
      removed = set_union(removed, ctx.components[i]);
    }
    const VertexSet vy = set_intersection(set_difference(br->vj, removed), translate(rest, g, all_vertices(rest)));
    require_invariant(set_intersection(set_difference(br->vj, removed), nx).empty(), "G^Y meets N[X]");
    const VertexSet ty_g = set_intersection(set_union(terminals, br->z), vy);
    rec.x = std::max(rec.x, static_cast<int>(x.size()));
    if (trace) trace->add(BranchRecord{depth, mask_in_high(ctx.high, j), dirty, static_cast<int>(br->touched.size()),
                                       static_cast<int>(br->y.size()), static_cast<int>(br->z.size())});

    // Touched components.
    for (std::size_t i : br->touched) {
      const VertexSet& c = ctx.components[i];
      const VertexSet& nc = ctx.neighborhoods[i];
      const VertexSet members = set_intersection(set_union(c, nc), br->vj);
      const VertexSet tc = set_intersection(set_union(set_intersection(terminals, c), nc), br->vj);
      if (first_case) {
        ++stats_->terminal_size;
        require_invariant(tc.size() <= terminals.size() + static_cast<std::size_t>(cfg_.k),
                          "component terminals exceed |T| + k");
      }
      ++stats_->seam;
      require_invariant(is_subset(set_intersection(nc, br->vj), tc), "component neighbourhood is not terminal in G_C");
      require_invariant(is_subset(set_intersection(nc, vy), br->z) && is_subset(set_intersection(br->z, vy), ty_g),
                        "component neighbourhood is not terminal in G^Y");
      WeightedGraph gc = induced_subgraph(g, members);
      VertexSet tcl = translate(g, gc, tc);
      br->comp_profiles.push_back(profile(gc, tcl, depth + 1, trace));
      br->comp_graphs.push_back(std::move(gc));
      br->comp_terms.push_back(std::move(tcl));
    }

    // G^Y with the restricted decomposition.
    br->esd_y = restrict_esd(rest, pf.esd, translate(g, rest, vy));
    br->gy = induced_subgraph(g, vy);
    br->ty = translate(g, br->gy, ty_g);
    const auto parts = particles(br->esd_y);
    rec.particles += static_cast<int>(parts.size());
    ++stats_->fan_out;
    require_invariant(total_particle_size(parts) <= static_cast<std::size_t>(2 * br->esd_y.pattern().max_degree() + 3) *
                                                        std::max<std::size_t>(br->gy.size(), 1),
                      "particles exceed the fan-out bound");
    for (const auto& p : parts) {
      WeightedGraph child = induced_subgraph(br->gy, p.members);
      VertexSet ct = translate(br->gy, child, set_intersection(p.members, br->ty));
      br->part_profiles.push_back(profile(child, ct, depth + 1, trace));
      br->part_graphs.push_back(std::move(child));
      br->part_terms.push_back(std::move(ct));
    }
    br->fy = Combiner(br->gy, br->ty, br->esd_y, br->part_profiles, stats_, cfg_.max_terminals).run();
    return br;
  }

  static Mask mask_in_high(const VertexSet& q, const VertexSet& j) {
    Mask m = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (contains(j, q[i])) m |= Mask{1} << i;
    return m;
  }

  // For each independent I of (T cap V(G^J)) u T^Y u Y: cell((I u J) cap T) gets
  // w(J) + w(I cap Y) + f^Y(I cap T^Y) + sum over touched C of
  // f_C(I cap N[C]) - w(I cap N(C)).
  template <typename Fn>
  void fold(const WeightedGraph& g, const VertexSet& terminals, const BagContext& ctx, const Branch& br, Fn&& fn) {
    const BorderProfile shape(labels_of(g, terminals), cfg_.max_terminals);
    const VertexSet ty_g = translate(br.gy, g, br.ty);
    const VertexSet pool_set = set_union(set_union(set_intersection(terminals, br.vj), ty_g), br.y);
    const int channels = 2 + static_cast<int>(br.touched.size());
    std::vector<FoldVertex> pool;
    for (Vertex v : pool_set) {
      FoldVertex fv{v, {}, 0};
      if (Mask b = bit_in(shape, g, v)) fv.bits.emplace_back(0, b);
      if (contains(ty_g, v)) fv.bits.emplace_back(1, bit_in(br.fy, br.gy, *br.gy.find_label(g.label(v))));
      if (contains(br.y, v)) fv.gain += static_cast<std::int64_t>(g.weight(v));
      for (std::size_t i = 0; i < br.touched.size(); ++i) {
        const WeightedGraph& gc = br.comp_graphs[i];
        auto local = gc.find_label(g.label(v));
        if (!local) continue;
        const Mask b = bit_in(br.comp_profiles[i], gc, *local);
        require_invariant(b != 0, "fold vertex inside a touched component is not one of its terminals");
        fv.bits.emplace_back(2 + static_cast<int>(i), b);
        if (contains(ctx.neighborhoods[br.touched[i]], v)) fv.gain -= static_cast<std::int64_t>(g.weight(v));
      }
      pool.push_back(std::move(fv));
    }
    Mask j_cell = 0;
    for (Vertex v : br.j) j_cell |= bit_in(shape, g, v);
    const auto w_j = static_cast<std::int64_t>(g.weight_of(br.j));
    VertexSet in;
    for_each_independent(g, pool, channels, [&](const std::vector<Mask>& m, std::int64_t gain,
                                                const std::vector<std::size_t>& chosen) {
      std::int64_t total = w_j + gain;
      const Score fy = br.fy[m[1]];
      require_invariant(fy.is_finite(), "G^Y profile is -inf on an independent set");
      total += static_cast<std::int64_t>(fy.value());
      for (std::size_t i = 0; i < br.touched.size(); ++i) {
        const Score fc = br.comp_profiles[i][m[2 + i]];
        require_invariant(fc.is_finite(), "component profile is -inf on an independent set");
        total += static_cast<std::int64_t>(fc.value());
      }
      require_invariant(total >= 0, "negative fold value");
      in.clear();
      for (std::size_t i : chosen) in.push_back(pool[i].v);
      fn(m[0] | j_cell, Score(static_cast<Weight>(total)), in);
    });
  }

  BorderProfile finish(const WeightedGraph& g, BorderProfile p) {
    if (cfg_.check_profiles) {
      ++stats_->profile;
      const Report rep = check_profile_sanity(g, p);
      require_invariant(rep.ok(), "profile sanity: " + rep.to_string());
    }
    return p;
  }

  BicliqueSolverConfig cfg_;
  RecursionTrace* trace_;
  InvariantStats own_stats_;
  InvariantStats* stats_;
  std::unique_ptr<Decomposer> own_decomposer_;
  Decomposer* decomposer_ = nullptr;
  int n_root_ = 0;
  int ell_ = 1;
};

inline SolveOutcome solve_biclique(const WeightedGraph& g, const VertexSet& terminals, const BicliqueSolverConfig& cfg,
                                   RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr,
                                   Decomposer* decomposer = nullptr) {
  for (Vertex v : terminals)
    if (v < 0 || v >= g.size()) throw InputError("solve_biclique: terminal outside the graph");
  BicliqueSolver solver(g, cfg, decomposer, trace, stats);
  try {
    return solver.profile(g, terminals);
  } catch (const ClawFound& c) {
    return c.in(g);
  }
}

inline MwisOutcome mwis(const WeightedGraph& g, const BicliqueSolverConfig& cfg, bool want_witness = false,
                        RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr,
                        Decomposer* decomposer = nullptr) {
  BicliqueSolver solver(g, cfg, decomposer, trace, stats);
  try {
    const BorderProfile p = solver.profile(g, {});
    MwisAnswer a{p[0].value(), std::nullopt};
    if (want_witness) {
      a.witness = solver.witness(g, {}, {});
      require_invariant(g.is_independent(*a.witness) && g.weight_of(*a.witness) == a.weight,
                        "witness does not match the reported value");
    }
    return a;
  } catch (const ClawFound& c) {
    return c.in(g);
  }
}

}  // namespace sttt
