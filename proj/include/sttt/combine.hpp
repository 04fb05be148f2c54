#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "sttt/esd.hpp"
#include "sttt/matching.hpp"
#include "sttt/profile.hpp"

namespace sttt {

// What an auxiliary edge stands for: choosing side `side` of pattern edge xy
// (a half edge, attached to the extra vertex t_e), or both sides (the edge xy).
struct AuxRole {
  enum Kind { Half, Full } kind = Full;
  Vertex x = -1, y = -1;  // pattern edge, x < y
  Vertex side = -1;       // for Half
};

// Everything built for one independent terminal subset I_T.
struct CombinationPlan {
  Mask chosen = 0;                        // I_T over the combiner's terminal bits
  std::vector<char> forced;               // per pattern vertex
  std::vector<int> enforcer;              // pattern neighbour y of the enforcing edge xy, or -1
  std::vector<std::size_t> base_particles;  // the base set, as particle indices
  Weight base_weight = 0;                 // a_0
  std::vector<Mask> particle_cell;        // I_T cap A per particle, in that particle's bits
  std::vector<Weight> particle_value;     // a(A) per particle
  AuxGraph aux;
  std::vector<AuxRole> roles;             // per aux edge
};

using ParticleWitnessFn = std::function<VertexSet(std::size_t particle, Mask cell)>;

// Combines per-particle profiles of a valid decomposition of g into the profile
// of (g, terminals). Profiles are aligned with particles(d) and must have the
// terminals (terminals cap A), as labels.
class Combiner {
 public:
  Combiner(const WeightedGraph& g, const VertexSet& terminals, const Esd& d, std::span<const BorderProfile> profiles,
           InvariantStats* stats = nullptr, int max_terminals = kDefaultMaxTerminals)
      : g_(g), d_(d), particles_(particles(d)), profiles_(profiles), stats_(stats),
        result_shape_(labels_of(g, normalized(terminals)), max_terminals) {
    by_bit_ = terminal_vertices(g, result_shape_);
    sorted_terms_ = normalized(by_bit_);
    if (profiles.size() != particles_.size())
      throw ContractViolation("expected " + std::to_string(particles_.size()) + " particle profiles, got " +
                              std::to_string(profiles.size()));
    std::vector<int> bit_of_vertex(g.size(), -1);
    for (std::size_t i = 0; i < by_bit_.size(); ++i) bit_of_vertex[by_bit_[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      index_[particles_[i].key] = i;
      VertexSet t_in_a;
      for (Vertex v : particles_[i].members)
        if (bit_of_vertex[v] >= 0) t_in_a.push_back(v);
      const auto want = labels_of(g, t_in_a);
      if (want != profiles[i].terminals())
        throw ContractViolation(std::string("profile for a ") + to_string(particles_[i].key.kind) +
                                " particle has the wrong terminal set");
      std::vector<int> bits;
      for (Label l : profiles[i].terminals()) bits.push_back(result_shape_.bit_of(l));
      particle_bits_.push_back(std::move(bits));
    }
    const WeightedGraph& h = d.pattern();
    for (auto [x, y] : h.edges()) {
      end_mask_[{x, y}] = mask_in(d.edge_end(x, y, x), bit_of_vertex);
      end_mask_[{y, x}] = mask_in(d.edge_end(x, y, y), bit_of_vertex);
    }
  }

  const std::vector<Particle>& particle_list() const { return particles_; }
  const std::vector<Vertex>& terminal_by_bit() const { return by_bit_; }
  std::size_t particle_index(const ParticleKey& k) const { return index_.at(k); }

  BorderProfile run() const {
    BorderProfile out = result_shape_;
    for (Mask m : independent_masks(g_, by_bit_)) out.set(m, Score(value(plan(m))));
    return out;
  }

  // a_0 + maximum auxiliary matching weight.
  Weight value(const CombinationPlan& p) const { return p.base_weight + max_weight_matching(p.aux).weight; }

  CombinationPlan plan(Mask chosen) const {
    const WeightedGraph& h = d_.pattern();
    CombinationPlan p;
    p.chosen = chosen;
    p.particle_cell.resize(particles_.size());
    p.particle_value.resize(particles_.size());
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      Mask cell = 0;
      for (std::size_t b = 0; b < particle_bits_[i].size(); ++b)
        if (chosen >> particle_bits_[i][b] & 1) cell |= Mask{1} << b;
      p.particle_cell[i] = cell;
      const Score s = profiles_[i][cell];
      require_invariant(s.is_finite(), "particle profile is -inf on an independent terminal subset");
      p.particle_value[i] = s.value();
    }

    p.forced.assign(h.size(), 0);
    p.enforcer.assign(h.size(), -1);
    for (Vertex x = 0; x < h.size(); ++x)
      for (Vertex y : h.neighbors(x))
        if (end_mask_.at({x, y}) & chosen) {
          require_invariant(!p.forced[x], "two enforcing edges at one pattern vertex");
          p.forced[x] = 1;
          p.enforcer[x] = y;
        }
    auto enforces = [&](Vertex x, Vertex y) { return p.forced[x] && p.enforcer[x] == y; };

    auto a = [&](const ParticleKey& k) { return p.particle_value[index_.at(k)]; };
    auto take = [&](const ParticleKey& k) {
      p.base_particles.push_back(index_.at(k));
      p.base_weight += a(k);
    };
    auto triangles_sum = [&](Vertex x, Vertex y) {
      Weight s = 0;
      for (Vertex z : d_.triangle_apexes(x, y)) s += a(triangle_particle(x, y, z));
      return s;
    };
    auto aux_weight = [&](Weight gain, Weight loss, const char* rule) {
      if (stats_) ++stats_->aux_weight;
      if (gain < loss) throw InvariantFailure(std::string("negative auxiliary weight in rule ") + rule);
      return gain - loss;
    };

    p.aux = AuxGraph(h.size());
    for (Vertex x = 0; x < h.size(); ++x)
      if (!p.forced[x]) take(vertex_particle(x));
    for (const auto& t : d_.triangles()) {
      const bool both = (enforces(t[0], t[1]) && enforces(t[1], t[0])) ||
                        (enforces(t[0], t[2]) && enforces(t[2], t[0])) ||
                        (enforces(t[1], t[2]) && enforces(t[2], t[1]));
      if (!both) take(triangle_particle(t[0], t[1], t[2]));
    }
    for (auto [ex, ey] : h.edges()) {
      const Vertex lo = ex, hi = ey;
      if (!p.forced[lo] && !p.forced[hi]) {
        const int te = p.aux.add_vertex();
        const Weight inner = a(interior_particle(lo, hi));
        add(p, te, lo, aux_weight(a(half_particle(lo, hi, lo)), inner + a(vertex_particle(lo)), "free/half"),
            {AuxRole::Half, lo, hi, lo});
        add(p, te, hi, aux_weight(a(half_particle(lo, hi, hi)), inner + a(vertex_particle(hi)), "free/half"),
            {AuxRole::Half, lo, hi, hi});
        add(p, lo, hi,
            aux_weight(a(full_particle(lo, hi)),
                       inner + a(vertex_particle(lo)) + a(vertex_particle(hi)) + triangles_sum(lo, hi), "free/full"),
            {AuxRole::Full, lo, hi});
        take(interior_particle(lo, hi));
      } else if (p.forced[lo] != p.forced[hi]) {
        const Vertex x = p.forced[lo] ? lo : hi;  // the forced end
        const Vertex y = x == lo ? hi : lo;
        if (enforces(x, y)) {
          add(p, x, y,
              aux_weight(a(full_particle(lo, hi)),
                         a(half_particle(lo, hi, x)) + a(vertex_particle(y)) + triangles_sum(lo, hi), "one-forced/full"),
              {AuxRole::Full, lo, hi});
          take(half_particle(lo, hi, x));
        } else {
          const int te = p.aux.add_vertex();
          add(p, te, y,
              aux_weight(a(half_particle(lo, hi, y)), a(interior_particle(lo, hi)) + a(vertex_particle(y)),
                         "one-forced/half"),
              {AuxRole::Half, lo, hi, y});
          take(interior_particle(lo, hi));
        }
      } else {
        const bool el = enforces(lo, hi), eh = enforces(hi, lo);
        if (el && eh)
          take(full_particle(lo, hi));
        else if (el)
          take(half_particle(lo, hi, lo));
        else if (eh)
          take(half_particle(lo, hi, hi));
        else
          take(interior_particle(lo, hi));
      }
    }
    std::sort(p.base_particles.begin(), p.base_particles.end());
    return p;
  }

  // The particle set selected by matching m (edge ids of plan.aux), as indices.
  std::vector<std::size_t> selected_particles(const CombinationPlan& p, const std::vector<std::size_t>& m) const {
    std::set<std::size_t> chosen(p.base_particles.begin(), p.base_particles.end());
    for (std::size_t id : m) {
      const AuxRole& r = p.roles.at(id);
      if (r.kind == AuxRole::Full) {
        chosen.insert(index_.at(full_particle(r.x, r.y)));
        for (const ParticleKey& k : {half_particle(r.x, r.y, r.x), half_particle(r.x, r.y, r.y),
                                     interior_particle(r.x, r.y), vertex_particle(r.x), vertex_particle(r.y)})
          chosen.erase(index_.at(k));
        for (Vertex z : d_.triangle_apexes(r.x, r.y)) chosen.erase(index_.at(triangle_particle(r.x, r.y, z)));
      } else {
        chosen.insert(index_.at(half_particle(r.x, r.y, r.side)));
        chosen.erase(index_.at(interior_particle(r.x, r.y)));
        chosen.erase(index_.at(vertex_particle(r.side)));
      }
    }
    return {chosen.begin(), chosen.end()};
  }

  // Union of particle witnesses for the particles selected by m; checked to be
  // independent, to meet the terminals exactly in I_T, and to weigh at least
  // a_0 + w'(m).
  VertexSet reconstruct_witness(const CombinationPlan& p, const std::vector<std::size_t>& m,
                                const ParticleWitnessFn& witness) const {
    if (!is_matching(p.aux, m)) throw InputError("reconstruct_witness: not a matching of the auxiliary graph");
    VertexSet out;
    for (std::size_t i : selected_particles(p, m)) {
      VertexSet part = witness(i, p.particle_cell[i]);
      require_invariant(is_subset(part, particles_[i].members), "particle witness leaves its particle");
      out = set_union(out, part);
    }
    Weight bound = p.base_weight;
    for (std::size_t id : m) bound += p.aux.edges()[id].weight;
    if (stats_) ++stats_->witness;
    require_invariant(g_.is_independent(out), "combined witness is not independent");
    VertexSet on_terminals;
    for (Vertex v : out)
      if (contains(sorted_terms_, v)) on_terminals.push_back(v);
    require_invariant(on_terminals == vertices_of_mask(by_bit_, p.chosen), "combined witness disagrees on terminals");
    require_invariant(g_.weight_of(out) >= bound, "combined witness lighter than the matching promises");
    return out;
  }

  // For an independent set I with I cap T = I_T, the aux edges that record
  // which interface sides I uses. nullopt if some required edge is missing or
  // the edges do not form a matching.
  std::optional<std::vector<std::size_t>> derive_matching(const CombinationPlan& p, const VertexSet& in) const {
    auto meets = [&](const VertexSet& s) { return !set_intersection(s, in).empty(); };
    auto find = [&](AuxRole::Kind kind, Vertex x, Vertex y, Vertex side) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < p.roles.size(); ++i) {
        const auto& r = p.roles[i];
        if (r.kind == kind && r.x == x && r.y == y && (kind == AuxRole::Full || r.side == side)) return i;
      }
      return std::nullopt;
    };
    std::vector<std::size_t> m;
    for (auto [x, y] : d_.pattern().edges()) {
      const bool sx = meets(d_.edge_end(x, y, x)), sy = meets(d_.edge_end(x, y, y));
      const bool fx = p.forced[x], fy = p.forced[y];
      std::optional<AuxRole> want;
      if (!fx && !fy) {
        if (sx && sy) want = AuxRole{AuxRole::Full, x, y};
        else if (sx) want = AuxRole{AuxRole::Half, x, y, x};
        else if (sy) want = AuxRole{AuxRole::Half, x, y, y};
      } else if (fx != fy) {
        const Vertex f = fx ? x : y, u = fx ? y : x;
        const bool su = fx ? sy : sx;
        if (su) want = p.enforcer[f] == u ? AuxRole{AuxRole::Full, x, y} : AuxRole{AuxRole::Half, x, y, u};
      }
      if (!want) continue;
      auto id = find(want->kind, want->x, want->y, want->side);
      if (!id) return std::nullopt;
      m.push_back(*id);
    }
    std::sort(m.begin(), m.end());
    if (!is_matching(p.aux, m)) return std::nullopt;
    return m;
  }

 private:
  static Mask mask_in(const VertexSet& s, const std::vector<int>& bit_of_vertex) {
    Mask m = 0;
    for (Vertex v : s)
      if (bit_of_vertex[v] >= 0) m |= Mask{1} << bit_of_vertex[v];
    return m;
  }
  static void add(CombinationPlan& p, int u, int v, Weight w, AuxRole role) {
    p.aux.add_edge(u, v, w);
    p.roles.push_back(role);
  }

  const WeightedGraph& g_;
  const Esd& d_;
  std::vector<Particle> particles_;
  std::span<const BorderProfile> profiles_;
  InvariantStats* stats_;
  BorderProfile result_shape_;
  std::vector<Vertex> by_bit_;
  std::map<ParticleKey, std::size_t> index_;
  std::vector<std::vector<int>> particle_bits_;
  std::map<std::pair<Vertex, Vertex>, Mask> end_mask_;  // (x, y) -> I_T bits in eta(xy, x)
  VertexSet sorted_terms_;
};

inline BorderProfile combine_esd(const WeightedGraph& g, const VertexSet& terminals, const Esd& d,
                                 std::span<const BorderProfile> profiles, InvariantStats* stats = nullptr,
                                 int max_terminals = kDefaultMaxTerminals) {
  return Combiner(g, terminals, d, profiles, stats, max_terminals).run();
}

}  // namespace sttt
