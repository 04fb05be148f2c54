// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include <sttt/sttt.hpp>

#include "test_support.hpp"

using namespace sttt;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Tally {
  InvariantStats stats;
  std::size_t invariant_failures = 0;
  std::size_t witnesses = 0;
  std::size_t bad_witnesses = 0;
  std::size_t profiles = 0;
  std::size_t bad_profiles = 0;
  std::vector<std::string> notes;
};

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  failures += !pass;
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

void note_witness(Tally& tally, const WeightedGraph& g, const MwisAnswer& a) {
  ++tally.witnesses;
  if (!a.witness || !g.is_independent(*a.witness) || g.weight_of(*a.witness) != a.weight) ++tally.bad_witnesses;
}

// Criterion 1: >= 500 triples, |V| <= 14, |T| <= 5, weights <= 20, every cell exact. Budget 120 s.
void combination(Tally& tally) {
  const auto t0 = Clock::now();
  Rng rng(20240601);
  const int total = 600;
  int exact = 0, nonempty_t = 0;
  for (int i = 0; i < total; ++i) {
    const auto inst = testing::random_esd_instance(rng, 14, 5, 20);
    nonempty_t += !inst.terminals.empty();
    const auto profiles = testing::particle_profiles(inst.g, inst.d, inst.terminals);
    try {
      const BorderProfile got = combine_esd(inst.g, inst.terminals, inst.d, profiles, &tally.stats);
      exact += verify_solution(inst.g, inst.terminals, got).ok();
      ++tally.profiles;
      tally.bad_profiles += !check_profile_sanity(inst.g, got).ok();
    } catch (const InvariantFailure&) {
      ++tally.invariant_failures;
    }
  }
  const double s = seconds_since(t0);
  report(1, "combination", exact == total && s < 120,
         std::to_string(exact) + "/" + std::to_string(total) + " triples equal the exhaustive profile (" +
             std::to_string(nonempty_t) + " with terminals), tolerance 0, " + secs(s) + " of 120s");
}

// Criterion 2: 1000 graphs on <= 10 vertices, exact against enumeration. Budget 60 s.
void matching() {
  const auto t0 = Clock::now();
  Rng rng(777);
  const int total = 1000;
  int exact = 0;
  for (int i = 0; i < total; ++i) {
    const int n = static_cast<int>(uniform_between(rng, 1, 10));
    AuxGraph aux(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng, 0.4)) aux.add_edge(u, v, uniform_between(rng, 0, 30));
    const MatchingResult got = max_weight_matching(aux);
    exact += is_matching(aux, got.edges) && got.weight == brute_force_matching(aux).weight;
  }
  const double s = seconds_since(t0);
  report(2, "matching", exact == total && s < 60,
         std::to_string(exact) + "/" + std::to_string(total) + " graphs equal enumeration, tolerance 0, " + secs(s) +
             " of 60s");
}

// Criterion 3: 200 S_{2,2,2}-free instances, n in 37..40, leaf cap 4 Delta^2 ell below n,
// recursion on >= 80%. Budget 600 s.
void degree_solver(Tally& tally) {
  const auto t0 = Clock::now();
  const int total = 200;
  int exact = 0, recursed = 0, errors = 0;
  for (int i = 0; i < total; ++i) {
    const std::uint64_t seed = 1000 + i;
    const int n = 37 + i % 4;
    const int delta = 2 + i % 2;
    const WeightedGraph g = generate_random_instance(n, delta, 2, seed);
    DegreeSolverConfig cfg;
    cfg.ell_scale = 0.0038;
    cfg.check_profiles = true;
    RecursionTrace trace;
    try {
      DegreeSolver probe(g, cfg);
      if (probe.leaf_cap() >= n) tally.notes.push_back("degree seed " + std::to_string(seed) + " leaf cap not below n");
      const MwisOutcome out = mwis(g, cfg, true, &trace, &tally.stats);
      const auto* a = std::get_if<MwisAnswer>(&out);
      if (!a) {
        ++errors;
        continue;
      }
      exact += a->weight == mwis_bruteforce(g).weight;
      recursed += trace.recursed();
      note_witness(tally, g, *a);
    } catch (const InvariantFailure&) {
      ++tally.invariant_failures;
      ++errors;
    } catch (const Error& e) {
      ++errors;
      tally.notes.push_back("degree seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  const double s = seconds_since(t0);
  const double frac = static_cast<double>(recursed) / total;
  report(3, "degree-solver", exact == total && frac >= 0.8 && s < 600,
         std::to_string(exact) + "/" + std::to_string(total) + " exact, " + std::to_string(errors) + " errors, " +
             std::to_string(recursed) + " recursed (need >= 80%), Delta in {2,3}, ell_scale 0.0038, " + secs(s) +
             " of 600s");
}

// Criterion 4: 100 S_{2,2,2}-free graphs without K_{2,2} subgraph, n <= 40; k = 2
// with retries at 3 and 4; capacity errors on <= 10%; no wrong value. Budget 900 s.
void biclique_solver(Tally& tally) {
  const auto t0 = Clock::now();
  const int total = 100;
  const int leaf_cap = 20;
  int completed = 0, exact = 0, capacity = 0, recursed = 0, other = 0, retried = 0;
  for (int i = 0; i < total; ++i) {
    const std::uint64_t seed = 5000 + i;
    const int n = 37 + i % 4;
    const WeightedGraph g = generate_biclique_free_instance(n, 5, 2, seed);
    bool done = false;
    for (int k = 2; k <= 4 && !done; ++k) {
      BicliqueSolverConfig cfg;
      cfg.k = k;
      cfg.ell_scale = 0.0038;
      cfg.leaf_cap_override = leaf_cap;
      cfg.check_profiles = true;
      RecursionTrace trace;
      try {
        const MwisOutcome out = mwis(g, cfg, true, &trace, &tally.stats);
        done = true;
        const auto* a = std::get_if<MwisAnswer>(&out);
        if (!a) {
          ++other;
          break;
        }
        ++completed;
        retried += k > 2;
        exact += a->weight == mwis_bruteforce(g).weight;
        recursed += trace.recursed();
        note_witness(tally, g, *a);
      } catch (const InvariantFailure& e) {
        ++tally.invariant_failures;
        ++other;
        done = true;
        tally.notes.push_back("biclique seed " + std::to_string(seed) + ": " + e.what());
      } catch (const CapacityError& e) {
        if (k == 4) {
          ++capacity;
          tally.notes.push_back("biclique seed " + std::to_string(seed) + ": " + e.what());
        }
      } catch (const Error& e) {
        ++other;
        done = true;
        tally.notes.push_back("biclique seed " + std::to_string(seed) + ": " + e.what());
      }
    }
  }
  const double s = seconds_since(t0);
  report(4, "biclique-solver", exact == completed && other == 0 && capacity * 10 <= total && s < 900,
         std::to_string(exact) + "/" + std::to_string(completed) + " completed runs exact, " +
             std::to_string(capacity) + " capacity errors (limit 10), " + std::to_string(other) + " other errors, " +
             std::to_string(retried) + " needed k > 2, " + std::to_string(recursed) + " recursed, leaf cap " +
             std::to_string(leaf_cap) + ", " + secs(s) + " of 900s");
}

// Criterion 5: 100 random graphs with <= 12 edges; MWIS of the line graph equals
// the maximum weight matching. Budget 60 s.
void line_graphs(Tally& tally) {
  const auto t0 = Clock::now();
  const int total = 100;
  int exact = 0;
  for (int i = 0; i < total; ++i) {
    const std::uint64_t seed = 9000 + i;
    Rng rng(seed);
    const int m = static_cast<int>(uniform_between(rng, 1, 12));
    const int n = static_cast<int>(uniform_between(rng, 2, 9));
    const int max_m = n * (n - 1) / 2;
    const WeightedGraph base = generate_graph_with_edges(n, std::min(m, max_m), seed);
    std::vector<Weight> ew(base.num_edges());
    for (auto& w : ew) w = uniform_between(rng, 1, 20);
    const WeightedGraph lg = line_graph(base, ew);
    AuxGraph aux(base.size());
    const auto edges = base.edges();
    for (std::size_t j = 0; j < edges.size(); ++j) aux.add_edge(edges[j].first, edges[j].second, ew[j]);
    DegreeSolverConfig cfg;
    cfg.ell_scale = 0.001;
    cfg.leaf_cap_override = 4;
    cfg.check_profiles = true;
    try {
      const MwisOutcome out = mwis(lg, cfg, true, nullptr, &tally.stats);
      const auto& a = std::get<MwisAnswer>(out);
      exact += a.weight == max_weight_matching(aux).weight;
      note_witness(tally, lg, a);
    } catch (const InvariantFailure&) {
      ++tally.invariant_failures;
    } catch (const std::exception& e) {
      tally.notes.push_back("line graph seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  const double s = seconds_since(t0);
  report(5, "line-graph", exact == total && s < 60,
         std::to_string(exact) + "/" + std::to_string(total) + " equal the maximum weight matching, tolerance 0, " +
             secs(s) + " of 60s");
}

void invariants(const Tally& tally) {
  const InvariantStats& st = tally.stats;
  const std::vector<std::pair<const char*, std::uint64_t>> kinds{
      {"pattern-degree", st.pattern_degree}, {"occurrence", st.occurrence}, {"x-neighbourhood", st.x_neighborhood},
      {"y-size", st.y_bound},                {"z-size", st.z_bound},       {"terminal-size", st.terminal_size},
      {"depth", st.depth},                   {"aux-weight", st.aux_weight}, {"barrier", st.barrier},
      {"bag", st.bag},                       {"seam", st.seam},            {"fan-out", st.fan_out}};
  std::string detail;
  bool all_exercised = true;
  std::uint64_t checks = 0;
  for (auto [name, count] : kinds) {
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + std::to_string(count);
    all_exercised &= count > 0;
    checks += count;
  }
  report(6, "invariants", tally.invariant_failures == 0 && all_exercised,
         std::to_string(tally.invariant_failures) + " violations in " + std::to_string(checks) + " checks (" + detail +
             ")");
}

}  // namespace

int main() {
  Tally tally;
  combination(tally);
  matching();
  degree_solver(tally);
  biclique_solver(tally);
  line_graphs(tally);
  invariants(tally);
  report(7, "witnesses", tally.bad_witnesses == 0 && tally.witnesses > 0 && tally.stats.witness > 0,
         std::to_string(tally.witnesses - tally.bad_witnesses) + "/" + std::to_string(tally.witnesses) +
             " reported witnesses independent with the reported weight (" + std::to_string(tally.stats.witness) +
             " internal witness checks)");
  report(8, "profile-sanity", tally.bad_profiles == 0 && tally.invariant_failures == 0 && tally.stats.profile > 0,
         std::to_string(tally.stats.profile) + " solver profiles checked in-run (any failure aborts its run), " +
             std::to_string(tally.profiles) + " combined profiles checked, " + std::to_string(tally.bad_profiles) +
             " with a wrong -inf pattern or a cell below w(I_T)");
  for (const auto& n : tally.notes) std::printf("note: %s\n", n.c_str());
  return failures ? 1 : 0;
}
