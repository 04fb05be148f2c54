#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "sttt/combine.hpp"
#include "sttt/decomposer.hpp"
#include "sttt/recursion.hpp"

namespace sttt {

struct DegreeSolverConfig {
  int t = 2;
  double ell_scale = 1.0;
  std::optional<int> leaf_cap_override;  // replaces 4 Delta^2 ell as the leaf size
  bool trace = false;
  int max_terminals = kDefaultMaxTerminals;
  bool check_profiles = false;  // run the profile sanity check on every call
  std::uint64_t leaf_node_cap = 500'000'000;
};

using SolveOutcome = std::variant<BorderProfile, SubdividedClawWitness>;

// Border MWIS on bounded-degree S_{t,t,t}-free graphs. A call on (G', T) is a
// brute-force leaf when G' is small; otherwise it decomposes G' - N[X], recurses
// on the particles with T* = (T cap V(G*)) u N(N[X]) and folds over independent
// subsets of T* u N[X].
class DegreeSolver {
 public:
  DegreeSolver(const WeightedGraph& root, DegreeSolverConfig cfg, Decomposer* decomposer = nullptr,
               RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr)
      : cfg_(cfg), trace_(trace), stats_(stats ? stats : &own_stats_) {
    if (cfg_.t < 1) throw InputError("degree solver: t must be positive");
    if (!(cfg_.ell_scale > 0)) throw InputError("degree solver: ell_scale must be positive");
    if (cfg_.leaf_cap_override && *cfg_.leaf_cap_override < 1)
      throw InputError("degree solver: leaf cap must be positive");
    n_root_ = root.size();
    delta_ = std::max(root.max_degree(), 1);
    ell_ = compute_ell(std::max(n_root_, 1), cfg_.t, cfg_.ell_scale);
    if (!decomposer) {
      own_decomposer_ = std::make_unique<ReferenceDecomposer>();
      decomposer = own_decomposer_.get();
    }
    decomposer_ = decomposer;
  }

  int ell() const { return ell_; }
  int delta() const { return delta_; }
  int leaf_cap() const { return cfg_.leaf_cap_override.value_or(4 * delta_ * delta_ * ell_); }
  int terminal_cap() const { return 4 * delta_ * delta_ * ell_; }
  int u_switch() const { return 3 * delta_ * delta_ * ell_; }

  // Throws ClawFound when a decomposition reports an induced S_{t,t,t}.
  BorderProfile profile(const WeightedGraph& g, const VertexSet& terminals) { return profile(g, terminals, 0, trace_); }

  // An optimal independent set of g meeting the terminals exactly in `chosen`.
  VertexSet witness(const WeightedGraph& g, const VertexSet& terminals, const VertexSet& chosen) {
    return witness(g, terminals, chosen, 0);
  }

 private:
  BorderProfile profile(const WeightedGraph& g, const VertexSet& terminals, int depth, RecursionTrace* trace) {
    auto step = prepare(g, terminals, depth, trace);
    if (step->leaf) return finish(g, leaf_profile(g, terminals, cfg_.max_terminals, cfg_.leaf_node_cap));
    BorderProfile out(labels_of(g, terminals), cfg_.max_terminals);
    fold(g, terminals, *step, [&](Mask cell, Score s, const std::vector<Vertex>&) { out.raise(cell, s); });
    return finish(g, out);
  }

  VertexSet witness(const WeightedGraph& g, const VertexSet& terminals, const VertexSet& chosen, int depth) {
    // Profiles needed on the way down are recomputed without tracing.
    auto step = prepare(g, terminals, depth, nullptr);
    if (step->leaf) return leaf_witness(g, terminals, chosen, cfg_.max_terminals, cfg_.leaf_node_cap);
    const BorderProfile shape(labels_of(g, terminals), cfg_.max_terminals);
    const Mask target = mask_of_set(shape, g, chosen);
    Score best = Score::neg_inf();
    std::vector<Vertex> best_i;
    fold(g, terminals, *step, [&](Mask cell, Score s, const std::vector<Vertex>& in) {
      if (cell == target && best.raise_to(s)) best_i = in;
    });
    require_invariant(best.is_finite(), "witness requested for a -inf cell");
    const VertexSet in = normalized(best_i);

    // Witness of G* for the cell I cap T*.
    const Step& st = *step;
    const VertexSet in_star = translate(g, st.star, set_intersection(in, st.star_terms_g));
    Combiner comb(st.star, st.star_terms, st.esd, st.child_profiles, stats_, cfg_.max_terminals);
    const CombinationPlan plan = comb.plan(mask_of_set(st.fstar, st.star, in_star));
    const auto matching = max_weight_matching(plan.aux);
    const VertexSet w_star = comb.reconstruct_witness(plan, matching.edges, [&](std::size_t i, Mask cell) {
      const WeightedGraph& child = st.child_graphs[i];
      const VertexSet chosen_child = vertices_of_mask(terminal_vertices(child, st.child_profiles[i]), cell);
      return translate(child, st.star, witness(child, st.child_terms[i], chosen_child, depth + 1));
    });
    VertexSet out = set_union(set_difference(in, st.star_terms_g), translate(st.star, g, w_star));
    if (stats_) ++stats_->witness;
    require_invariant(g.is_independent(out), "witness is not independent");
    require_invariant(set_intersection(out, normalized(terminals)) == normalized(chosen),
                      "witness disagrees with the requested terminal cell");
    require_invariant(Score(g.weight_of(out)) == best, "witness weight differs from the profile value");
    return out;
  }

  struct Step {
    bool leaf = true;
    WeightedGraph star;
    Esd esd;
    VertexSet star_terms;    // T* in ids of star
    VertexSet star_terms_g;  // T* in ids of G'
    VertexSet closed_x;      // N[X] in ids of G'
    std::vector<WeightedGraph> child_graphs;
    std::vector<VertexSet> child_terms;
    std::vector<BorderProfile> child_profiles;
    BorderProfile fstar;
  };

  std::unique_ptr<Step> prepare(const WeightedGraph& g, const VertexSet& terminals_in, int depth,
                                RecursionTrace* trace) {
    const VertexSet terminals = normalized(terminals_in);
    auto st = std::make_unique<Step>();
    ++stats_->terminal_size;
    require_invariant(static_cast<int>(terminals.size()) <= terminal_cap(),
                      "terminal set of size " + std::to_string(terminals.size()) + " exceeds 4 Delta^2 ell = " +
                          std::to_string(terminal_cap()));
    ++stats_->depth;
    require_invariant(depth <= std::max(depth_limit(n_root_), 0),
                      "recursion depth " + std::to_string(depth) + " exceeds 2 ceil(log2 n)");
    CallRecord rec{depth, g.size(), static_cast<int>(terminals.size()), true, 0, 0, true};
    if (g.size() <= leaf_cap()) {
      if (trace) trace->add(rec);
      return st;
    }
    st->leaf = false;
    rec.leaf = false;
    rec.u_is_all = static_cast<int>(terminals.size()) <= u_switch();
    const VertexSet u = rec.u_is_all ? all_vertices(g) : terminals;
    DecomposeOutcome outcome = decomposer_->decompose(g, u, cfg_.t);
    if (auto* w = std::get_if<SubdividedClawWitness>(&outcome)) {
      if (trace) trace->add(rec);
      throw ClawFound::from(g, *w);
    }
    PathFamily& pf = std::get<PathFamily>(outcome);
    const VertexSet x = pf.path_vertices();
    st->closed_x = closed_neighborhood(g, x);
    st->star = induced_subgraph(g, pf.remainder);
    st->esd = std::move(pf.esd);
    rec.x = static_cast<int>(x.size());

    const Report valid = validate_esd(st->star, st->esd);
    require_invariant(valid.ok(), "decomposer returned an invalid decomposition: " + valid.to_string());
    ++stats_->pattern_degree;
    require_invariant(check_pattern_degree(st->star, st->esd, clique_number(g) + 1),
                      "pattern degree exceeds the clique number");
    ++stats_->occurrence;
    require_invariant(occurrence_bound(st->star, st->esd) <= occurrence_limit(st->esd),
                      "a vertex lies in too many particles");

    // T* = (T cap V(G*)) u N(N[X]).
    st->star_terms_g = set_union(set_difference(terminals, st->closed_x), open_neighborhood(g, st->closed_x));
    st->star_terms = translate(g, st->star, st->star_terms_g);
    ++stats_->barrier;
    for (Vertex v : st->closed_x)
      for (Vertex u2 : g.neighbors(v))
        require_invariant(contains(st->closed_x, u2) || contains(st->star_terms_g, u2),
                          "N[X] has an edge to a nonterminal of G*");

    const auto parts = particles(st->esd);
    rec.particles = static_cast<int>(parts.size());
    if (trace) trace->add(rec);
    ++stats_->fan_out;
    require_invariant(total_particle_size(parts) <= static_cast<std::size_t>(2 * delta_ + 3) * g.size(),
                      "particles exceed (2 Delta + 3) |V(G')| in total");

    for (const auto& p : parts) {
      WeightedGraph child = induced_subgraph(st->star, p.members);
      VertexSet child_terms = translate(st->star, child, set_intersection(p.members, st->star_terms));
      st->child_profiles.push_back(profile(child, child_terms, depth + 1, trace));
      st->child_graphs.push_back(std::move(child));
      st->child_terms.push_back(std::move(child_terms));
    }
    st->fstar = Combiner(st->star, st->star_terms, st->esd, st->child_profiles, stats_, cfg_.max_terminals).run();
    return st;
  }

  // For each independent I of T* u N[X]: cell(I cap T) gets w(I \ T*) + f*(I cap T*).
  template <typename Fn>
  void fold(const WeightedGraph& g, const VertexSet& terminals, const Step& st, Fn&& fn) {
    const BorderProfile shape(labels_of(g, normalized(terminals)), cfg_.max_terminals);
    std::vector<FoldVertex> pool;
    for (Vertex v : set_union(st.star_terms_g, st.closed_x)) {
      FoldVertex fv{v, {}, 0};
      if (Mask b = bit_in(shape, g, v)) fv.bits.emplace_back(0, b);
      if (contains(st.star_terms_g, v)) {
        fv.bits.emplace_back(1, bit_in(st.fstar, st.star, *st.star.find_label(g.label(v))));
      } else {
        fv.gain = static_cast<std::int64_t>(g.weight(v));
      }
      pool.push_back(std::move(fv));
    }
    std::vector<Vertex> in;
    for_each_independent(g, pool, 2, [&](const std::vector<Mask>& m, std::int64_t gain,
                                         const std::vector<std::size_t>& chosen) {
      const Score f = st.fstar[m[1]];
      require_invariant(f.is_finite(), "G* profile is -inf on an independent set");
      in.clear();
      for (std::size_t i : chosen) in.push_back(pool[i].v);
      fn(m[0], f + static_cast<Weight>(gain), in);
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

  DegreeSolverConfig cfg_;
  RecursionTrace* trace_;
  InvariantStats own_stats_;
  InvariantStats* stats_;
  std::unique_ptr<Decomposer> own_decomposer_;
  Decomposer* decomposer_ = nullptr;
  int n_root_ = 0;
  int delta_ = 1;
  int ell_ = 1;
};

// Profile of (G, w, T), or an induced S_{t,t,t} (ids of g) met along the way.
inline SolveOutcome solve_degree(const WeightedGraph& g, const VertexSet& terminals, const DegreeSolverConfig& cfg,
                                 RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr,
                                 Decomposer* decomposer = nullptr) {
  for (Vertex v : terminals)
    if (v < 0 || v >= g.size()) throw InputError("solve_degree: terminal outside the graph");
  DegreeSolver solver(g, cfg, decomposer, trace, stats);
  try {
    return solver.profile(g, terminals);
  } catch (const ClawFound& c) {
    return c.in(g);
  }
}

struct MwisAnswer {
  Weight weight = 0;
  std::optional<VertexSet> witness;
};

using MwisOutcome = std::variant<MwisAnswer, SubdividedClawWitness>;

inline MwisOutcome mwis(const WeightedGraph& g, const DegreeSolverConfig& cfg, bool want_witness = false,
                        RecursionTrace* trace = nullptr, InvariantStats* stats = nullptr,
                        Decomposer* decomposer = nullptr) {
  DegreeSolver solver(g, cfg, decomposer, trace, stats);
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
