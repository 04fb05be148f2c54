#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sttt/graph.hpp"

namespace sttt {

namespace io {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  if (tok.empty() || tok.front() == '-' || tok.front() == '+')
    throw ParseError(line, std::string("expected non-negative integer for ") + what + ", got '" +
                               std::string(tok) + "'");
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("bad integer for ") + what + ": '" + std::string(tok) + "'");
  return v;
}

// Parses "<id> <id> ..." where ids are 1-based and must be < limit + 1.
inline std::vector<int> parse_id_list(std::span<const std::string_view> toks, std::size_t line, int limit,
                                      const char* what) {
  std::vector<int> out;
  for (auto tok : toks) {
    auto id = parse_uint(tok, line, what);
    if (id < 1 || id > static_cast<std::uint64_t>(limit))
      throw ParseError(line, std::string(what) + " id out of range: " + std::string(tok));
    out.push_back(static_cast<int>(id - 1));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    fn(text.substr(pos, end - pos), lineno);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace io

// Line-oriented graph text format:
//   c <comment>
//   p <n> <m>
//   v <id> <weight>     one per vertex, ids 1..n
//   e <u> <v>           one per edge
// Vertex i of the result is file id i+1 and carries label i.
inline WeightedGraph read_graph(std::string_view text) {
  bool have_header = false;
  int n = 0;
  std::size_t m = 0;
  std::vector<Weight> weights;
  std::vector<char> have_weight;
  std::vector<Edge> edges;
  std::vector<std::pair<Edge, std::size_t>> seen;
  std::size_t last_line = 0;

  io::for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    last_line = lineno;
    auto toks = io::split_ws(line);
    if (toks.empty() || toks[0] == "c") return;
    if (toks[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      if (toks.size() != 3) throw ParseError(lineno, "header must be 'p <n> <m>'");
      auto nn = io::parse_uint(toks[1], lineno, "vertex count");
      if (nn > 10'000'000) throw ParseError(lineno, "vertex count too large");
      n = static_cast<int>(nn);
      m = io::parse_uint(toks[2], lineno, "edge count");
      weights.assign(n, 0);
      have_weight.assign(n, 0);
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(lineno, "expected header 'p <n> <m>' first");
    if (toks[0] == "v") {
      if (toks.size() != 3) throw ParseError(lineno, "vertex line must be 'v <id> <weight>'");
      auto ids = io::parse_id_list(std::span(toks).subspan(1, 1), lineno, n, "vertex");
      if (have_weight[ids[0]]) throw ParseError(lineno, "duplicate vertex line");
      weights[ids[0]] = io::parse_uint(toks[2], lineno, "weight");
      have_weight[ids[0]] = 1;
    } else if (toks[0] == "e") {
      if (toks.size() != 3) throw ParseError(lineno, "edge line must be 'e <u> <v>'");
      auto ids = io::parse_id_list(std::span(toks).subspan(1, 2), lineno, n, "vertex");
      if (ids[0] == ids[1]) throw ParseError(lineno, "self-loop");
      Edge e{std::min(ids[0], ids[1]), std::max(ids[0], ids[1])};
      edges.push_back(e);
      seen.emplace_back(e, lineno);
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(toks[0]) + "'");
    }
  });

  if (!have_header) throw ParseError(last_line, "missing header");
  for (int v = 0; v < n; ++v)
    if (!have_weight[v]) throw ParseError(last_line, "missing vertex line for id " + std::to_string(v + 1));
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first)
      throw ParseError(std::max(seen[i].second, seen[i - 1].second), "duplicate edge");
  if (edges.size() != m)
    throw ParseError(last_line, "header announces " + std::to_string(m) + " edges, found " +
                                    std::to_string(edges.size()));
  return WeightedGraph(std::move(weights), edges);
}

inline WeightedGraph read_graph_file(const std::string& path) { return read_graph(io::read_file(path)); }

// Canonical text: ids ascending, edges lexicographic.
inline std::string write_graph(const WeightedGraph& g, std::string_view comment = {}) {
  std::ostringstream out;
  if (!comment.empty()) {
    io::for_each_line(comment, [&](std::string_view line, std::size_t) { out << "c " << line << '\n'; });
  }
  out << "p " << g.size() << ' ' << g.num_edges() << '\n';
  for (Vertex v = 0; v < g.size(); ++v) out << "v " << v + 1 << ' ' << g.weight(v) << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace sttt
