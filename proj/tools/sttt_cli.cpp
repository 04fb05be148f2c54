#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <sttt/sttt.hpp>

namespace fs = std::filesystem;
using namespace sttt;

namespace {

enum Exit { kOk = 0, kConfig = 2, kClaw = 3, kCapacity = 4, kInternal = 5 };

struct ConfigError : Error {
  using Error::Error;
};

struct SolveOptions {
  std::string algo = "auto";
  int t = 2;
  int k = 2;
  int k_max = 4;
  double ell_scale = 1.0;
  int leaf_cap = 0;  // 0: formula
  int delta_small = 4;
  int jobs = 1;
  std::uint64_t seed = 1;
  bool assert_free = false;
  bool witness = false;
  bool timing = false;
  std::string trace;
};

// Values from --config, overridden by any flag given on the command line.
void merge_config(const CLI::App& app, const std::string& path, SolveOptions& o) {
  if (path.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config " + path + ": expected a JSON object");
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (!j.contains(key) || app.count(flag) > 0) return;
    try {
      j.at(key).get_to(field);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config key ") + key + ": " + e.what());
    }
  };
  static const std::vector<std::string> known{"algo",      "t",    "k",    "k_max",       "ell_scale", "leaf_cap",
                                              "delta_small", "jobs", "seed", "assert_free", "witness",   "trace"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key " + key);
  take("algo", "--algo", o.algo);
  take("t", "--t", o.t);
  take("k", "--k", o.k);
  take("k_max", "--k-max", o.k_max);
  take("ell_scale", "--ell-scale", o.ell_scale);
  take("leaf_cap", "--leaf-cap", o.leaf_cap);
  take("delta_small", "--delta-small", o.delta_small);
  take("jobs", "--jobs", o.jobs);
  take("seed", "--seed", o.seed);
  take("assert_free", "--assert-free", o.assert_free);
  take("witness", "--witness", o.witness);
  take("trace", "--trace", o.trace);
}

void check_options(const SolveOptions& o) {
  static const std::vector<std::string> algos{"auto", "bruteforce", "degree", "biclique"};
  if (std::find(algos.begin(), algos.end(), o.algo) == algos.end()) throw ConfigError("unknown algorithm " + o.algo);
  if (o.t < 1) throw ConfigError("--t must be positive");
  if (o.k < 2 || o.k_max < o.k) throw ConfigError("need 2 <= --k <= --k-max");
  if (!(o.ell_scale > 0)) throw ConfigError("--ell-scale must be positive");
  if (o.leaf_cap < 0) throw ConfigError("--leaf-cap must be non-negative");
  if (o.jobs < 1) throw ConfigError("--jobs must be positive");
}

struct RunResult {
  std::string algo;
  Weight value = 0;
  std::optional<VertexSet> witness;
  std::optional<SubdividedClawWitness> claw;
  int k = 0;
  int depth = 0;
  std::size_t calls = 0;
  double leaf_fraction = 1.0;
  double ms = 0;
  RecursionTrace trace;
};

std::string resolve_algo(const WeightedGraph& g, const SolveOptions& o) {
  if (o.algo != "auto") return o.algo;
  if (g.size() <= 40) return "bruteforce";
  return g.max_degree() <= o.delta_small ? "degree" : "biclique";
}

RunResult run(const WeightedGraph& g, const SolveOptions& o) {
  RunResult r;
  r.algo = resolve_algo(g, o);
  const auto start = std::chrono::steady_clock::now();
  auto take = [&](const MwisOutcome& out) {
    if (const auto* c = std::get_if<SubdividedClawWitness>(&out)) {
      r.claw = *c;
      return;
    }
    const auto& a = std::get<MwisAnswer>(out);
    r.value = a.weight;
    r.witness = a.witness;
  };
  if (r.algo == "bruteforce") {
    const MwisResult m = mwis_bruteforce(g);
    r.value = m.weight;
    if (o.witness) r.witness = m.witness;
    r.calls = 1;
  } else if (r.algo == "degree") {
    DegreeSolverConfig cfg;
    cfg.t = o.t;
    cfg.ell_scale = o.ell_scale;
    if (o.leaf_cap > 0) cfg.leaf_cap_override = o.leaf_cap;
    take(mwis(g, cfg, o.witness, &r.trace));
  } else {
    for (int k = o.k;; ++k) {
      BicliqueSolverConfig cfg;
      cfg.t = o.t;
      cfg.k = k;
      cfg.ell_scale = o.ell_scale;
      if (o.leaf_cap > 0) cfg.leaf_cap_override = o.leaf_cap;
      r.trace = RecursionTrace();
      try {
        take(mwis(g, cfg, o.witness, &r.trace));
        r.k = k;
        break;
      } catch (const CapacityError&) {
        if (k >= o.k_max) throw;
      }
    }
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (r.algo != "bruteforce") {
    r.depth = r.trace.max_depth();
    r.calls = r.trace.calls().size();
    r.leaf_fraction = r.calls ? static_cast<double>(r.trace.leaves()) / static_cast<double>(r.calls) : 1.0;
  }
  if (r.witness)
    require_invariant(g.is_independent(*r.witness) && g.weight_of(*r.witness) == r.value,
                      "witness does not match the reported value");
  return r;
}

std::string ids(const VertexSet& s) {
  std::string out;
  for (Vertex v : s) out += (out.empty() ? "" : " ") + std::to_string(v + 1);
  return out;
}

std::string claw_text(const SubdividedClawWitness& w) {
  std::string out = "center " + std::to_string(w.center + 1) + " legs";
  for (int i = 0; i < 3; ++i) out += (i ? " | " : " ") + ids(w.legs[i]);
  return out;
}

void write_trace(const std::string& path, const RecursionTrace& trace) {
  if (path.empty()) return;
  if (path == "-") {
    trace.write(std::cerr);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot write trace file " + path);
  trace.write(f);
}

int cmd_solve(const std::string& file, const SolveOptions& o) {
  const WeightedGraph g = read_graph_file(file);
  if (o.assert_free) {
    if (auto w = find_induced_sttt(g, o.t)) {
      std::cout << "claw " << claw_text(*w) << '\n';
      return kClaw;
    }
  }
  RunResult r = run(g, o);
  write_trace(o.trace, r.trace);
  if (r.claw) {
    std::cout << "claw " << claw_text(*r.claw) << '\n';
    if (o.assert_free || g.size() > 40) return kClaw;
    std::cerr << "input is not S_{t,t,t}-free; answering with the exact branch and bound\n";
    SolveOptions fallback = o;
    fallback.algo = "bruteforce";
    r = run(g, fallback);
  }
  std::cout << "instance " << fs::path(file).filename().string() << '\n'
            << "algo " << r.algo << '\n'
            << "value " << r.value << '\n';
  if (r.witness) std::cout << "witness " << ids(*r.witness) << '\n';
  if (o.timing) {
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(3);
    ms << r.ms;
    std::cout << "ms " << ms.str() << '\n';
  }
  std::cout << "depth " << r.depth << '\n'
            << "calls " << r.calls << '\n'
            << "leaf_fraction " << r.leaf_fraction << '\n'
            << "config t=" << o.t << " k=" << (r.k ? r.k : o.k) << " ell_scale=" << o.ell_scale
            << " leaf_cap=" << o.leaf_cap << " seed=" << o.seed << '\n'
            << "status ok\n";
  return kOk;
}

int cmd_check(const std::string& graph_file, const std::string& esd, const std::string& td, int weissauer,
              const std::string& outcome, const std::string& u_list, int t) {
  const WeightedGraph g = read_graph_file(graph_file);
  Report rep;
  int checked = 0;
  if (!esd.empty()) {
    ++checked;
    rep.append(validate_esd(g, parse_esd(io::read_file(esd), g.size())));
  }
  if (!td.empty()) {
    ++checked;
    const std::string text = io::read_file(td);
    // The reader validates; its first complaint becomes the report.
    try {
      const TreeDecomposition d = read_tree_decomposition(text, g);
      if (weissauer > 0) rep.append(check_weissauer(g, d, weissauer));
    } catch (const ParseError& e) {
      rep.add("tree-decomposition", e.what());
    }
  }
  if (!outcome.empty()) {
    ++checked;
    VertexSet u = all_vertices(g);
    if (!u_list.empty()) {
      u.clear();
      std::string tok;
      std::istringstream in(u_list);
      while (std::getline(in, tok, ','))
        if (!tok.empty()) u.push_back(static_cast<Vertex>(std::stoul(tok)) - 1);
      u = normalized(u);
      for (Vertex v : u)
        if (v < 0 || v >= g.size()) throw InputError("--u names an unknown vertex");
    }
    rep.append(validate_outcome(g, u, t, read_outcome(io::read_file(outcome), g)));
  }
  if (!checked) throw ConfigError("check needs --esd, --td or --outcome");
  if (rep.ok()) {
    std::cout << "OK\n";
    return kOk;
  }
  std::cout << "violations (vertex and node ids are 0-based: file id minus 1)\n" << rep.to_string();
  return 1;
}

struct GenOptions {
  std::string family = "random";
  int n = 30, delta = 4, t = 2, a = 2, b = 2, c = 2, edges = 12, base_n = 0;
  std::uint64_t seed = 1;
  std::string out, base;
};

int cmd_gen(const GenOptions& o, const std::string& argv_echo) {
  auto emit = [](const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
      std::cout << text;
    else
      io::write_file(path, text);
  };
  const std::string note = "generated by: " + argv_echo;
  if (o.family == "sttt") {
    emit(o.out, write_graph(generate_subdivided_claw(o.a, o.b, o.c),
                            note + "\nS_{" + std::to_string(o.a) + "," + std::to_string(o.b) + "," +
                                std::to_string(o.c) + "}"));
  } else if (o.family == "random") {
    emit(o.out, write_graph(generate_random_instance(o.n, o.delta, o.t, o.seed),
                            note + "\nseed " + std::to_string(o.seed)));
  } else if (o.family == "biclique") {
    emit(o.out, write_graph(generate_biclique_free_instance(o.n, o.delta, o.t, o.seed),
                            note + "\nseed " + std::to_string(o.seed)));
  } else if (o.family == "linegraph") {
    const int base_n = o.base_n > 0 ? o.base_n : std::max(2, (2 * o.edges + 2) / 3);
    const WeightedGraph base = generate_graph_with_edges(base_n, o.edges, o.seed);
    Rng rng(o.seed);
    std::vector<Weight> ew(base.num_edges());
    for (auto& w : ew) w = uniform_between(rng, 1, 20);
    std::string base_note = note + "\nseed " + std::to_string(o.seed) + "\nbase graph; edge weights follow";
    const auto edges = base.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
      base_note += "\nedge-weight " + std::to_string(edges[i].first + 1) + " " + std::to_string(edges[i].second + 1) +
                   " " + std::to_string(ew[i]);
    emit(o.out, write_graph(line_graph(base, ew), note + "\nseed " + std::to_string(o.seed) +
                                                      "\nline graph; vertex i is base edge i in listed order"));
    const std::string base_path = !o.base.empty() ? o.base : (o.out.empty() || o.out == "-") ? "" : o.out + ".base";
    if (!base_path.empty()) io::write_file(base_path, write_graph(base, base_note));
  } else {
    throw ConfigError("unknown family " + o.family);
  }
  return kOk;
}

int cmd_bench(const std::string& dir, const std::string& algos_csv, const SolveOptions& base) {
  std::vector<std::string> algos;
  {
    std::string tok;
    std::istringstream in(algos_csv);
    while (std::getline(in, tok, ',')) {
      if (tok.empty()) continue;
      SolveOptions probe = base;
      probe.algo = tok;
      check_options(probe);
      algos.push_back(tok);
    }
  }
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".graph") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<std::vector<std::string>> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      const std::string name = files[i].filename().string();
      std::optional<WeightedGraph> g;
      try {
        g = read_graph_file(files[i].string());
      } catch (const Error& e) {
        for (const auto& a : algos) rows[i].push_back(name + "," + a + ",,,,,0");
        continue;
      }
      std::optional<Weight> oracle;
      if (g->size() <= 40) {
        try {
          oracle = mwis_bruteforce(*g).weight;
        } catch (const Error&) {
        }
      }
      for (const auto& a : algos) {
        SolveOptions o = base;
        o.algo = a;
        o.witness = false;
        try {
          const RunResult r = run(*g, o);
          if (r.claw) {
            rows[i].push_back(name + "," + r.algo + ",,,,,0");
            continue;
          }
          std::ostringstream line;
          line.setf(std::ios::fixed);
          line.precision(3);
          const bool ok = !oracle || *oracle == r.value;
          line << name << ',' << r.algo << ',' << r.value << ',' << r.ms << ',' << r.depth << ',' << r.calls << ','
               << ok;
          rows[i].push_back(line.str());
        } catch (const Error&) {
          rows[i].push_back(name + "," + a + ",,,,,0");
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::max(1, std::min<int>(base.jobs, static_cast<int>(files.size())));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::cout << "instance,algo,value,ms,depth,calls,ok\n";
  for (const auto& rs : rows)
    for (const auto& r : rs) std::cout << r << '\n';
  return kOk;
}

void add_solver_flags(CLI::App* cmd, SolveOptions& o, std::string& config) {
  cmd->add_option("--algo", o.algo, "auto, bruteforce, degree or biclique");
  cmd->add_option("--t", o.t, "forbidden S_{t,t,t} and K_{t,t}");
  cmd->add_option("--k", o.k, "first k tried by the biclique solver");
  cmd->add_option("--k-max", o.k_max, "largest k tried after capacity failures");
  cmd->add_option("--ell-scale", o.ell_scale, "factor on the ell formula");
  cmd->add_option("--leaf-cap", o.leaf_cap, "leaf size override (0 keeps the formula)");
  cmd->add_option("--delta-small", o.delta_small, "auto: largest degree sent to the degree solver");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--jobs", o.jobs, "worker threads");
  cmd->add_option("--trace", o.trace, "write the recursion trace to this file ('-' for stderr)");
  cmd->add_option("--config", config, "JSON file with defaults for these flags");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max weight independent set on S_{t,t,t}-free graphs"};
  app.require_subcommand(1);
  std::string argv_echo;
  for (int i = 1; i < argc; ++i) argv_echo += (i > 1 ? " " : "") + std::string(argv[i]);

  SolveOptions solve_opts;
  std::string solve_config, graph_file;
  auto* solve = app.add_subcommand("solve", "solve MWIS on a graph file");
  solve->add_option("graph", graph_file, "graph file")->required();
  add_solver_flags(solve, solve_opts, solve_config);
  solve->add_flag("--assert-free", solve_opts.assert_free, "exit 3 if an induced S_{t,t,t} is found");
  solve->add_flag("--witness", solve_opts.witness, "print an optimal independent set");
  solve->add_flag("--timing", solve_opts.timing, "print wall time (breaks byte-identical output)");

  std::string check_graph, esd_file, td_file, outcome_file, u_list;
  int weissauer = 0, check_t = 2;
  auto* check = app.add_subcommand("check", "validate a decomposition file against a graph");
  check->add_option("graph", check_graph, "graph file")->required();
  check->add_option("--esd", esd_file, "extended strip decomposition file");
  check->add_option("--td", td_file, "tree decomposition file");
  check->add_option("--weissauer", weissauer, "also check adhesions below k and torso degrees");
  check->add_option("--outcome", outcome_file, "decomposer outcome file");
  check->add_option("--u", u_list, "comma-separated U for --outcome (default: all vertices)");
  check->add_option("--t", check_t, "t for --outcome");

  GenOptions gen_opts;
  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", gen_opts.family, "sttt, random, biclique or linegraph");
  gen->add_option("--n", gen_opts.n);
  gen->add_option("--delta", gen_opts.delta);
  gen->add_option("--t", gen_opts.t);
  gen->add_option("--a", gen_opts.a);
  gen->add_option("--b", gen_opts.b);
  gen->add_option("--c", gen_opts.c);
  gen->add_option("--edges", gen_opts.edges, "linegraph: edges of the base graph");
  gen->add_option("--base-n", gen_opts.base_n, "linegraph: vertices of the base graph");
  gen->add_option("--seed", gen_opts.seed);
  gen->add_option("--out", gen_opts.out, "output file (default stdout)");
  gen->add_option("--base", gen_opts.base, "linegraph: base graph file (default <out>.base)");

  SolveOptions bench_opts;
  std::string bench_config, bench_dir, bench_algos = "auto";
  auto* bench = app.add_subcommand("bench", "run solvers over a directory of .graph files");
  bench->add_option("dir", bench_dir, "instance directory")->required();
  add_solver_flags(bench, bench_opts, bench_config);
  bench->get_option("--algo")->description("comma-separated algorithms");
  bench->get_option("--algo")->each([&](const std::string& s) { bench_algos = s; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) {
      merge_config(*solve, solve_config, solve_opts);
      check_options(solve_opts);
      return cmd_solve(graph_file, solve_opts);
    }
    if (*check) return cmd_check(check_graph, esd_file, td_file, weissauer, outcome_file, u_list, check_t);
    if (*gen) return cmd_gen(gen_opts, argv_echo);
    if (*bench) {
      merge_config(*bench, bench_config, bench_opts);
      if (bench->count("--algo") == 0 && bench_opts.algo != "auto") bench_algos = bench_opts.algo;
      bench_opts.algo = "auto";
      check_options(bench_opts);
      return cmd_bench(bench_dir, bench_algos, bench_opts);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const GenerationError& e) {
    std::cerr << "capacity: " << e.what() << '\n';
    return kCapacity;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
