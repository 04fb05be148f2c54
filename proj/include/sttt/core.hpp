#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sttt {

using Vertex = int;
using Label = std::uint64_t;
using Weight = std::uint64_t;

// Sorted, duplicate-free list of vertex ids of one particular graph.
using VertexSet = std::vector<Vertex>;

// A profile cell value: a non-negative weight or -infinity.
//
// -infinity is kept out of the numeric domain; reading value() of it is a bug.
class Score {
 public:
  constexpr Score() = default;
  constexpr explicit Score(Weight w) : finite_(true), value_(w) {}

  static constexpr Score neg_inf() { return Score(); }

  constexpr bool is_finite() const { return finite_; }
  constexpr Weight value() const {
    if (!finite_) throw std::logic_error("value() of -inf score");
    return value_;
  }

  friend constexpr Score operator+(Score a, Score b) {
    if (!a.finite_ || !b.finite_) return neg_inf();
    return Score(a.value_ + b.value_);
  }
  friend constexpr Score operator+(Score a, Weight b) {
    if (!a.finite_) return neg_inf();
    return Score(a.value_ + b);
  }

  friend constexpr bool operator==(Score a, Score b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(Score a, Score b) {
    if (!b.finite_) return false;
    if (!a.finite_) return true;
    return a.value_ < b.value_;
  }
  friend constexpr bool operator>(Score a, Score b) { return b < a; }

  // Replaces *this with `other` when `other` is strictly larger.
  constexpr bool raise_to(Score other) {
    if (*this < other) {
      *this = other;
      return true;
    }
    return false;
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : std::string("-inf"); }

 private:
  bool finite_ = false;
  Weight value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Score s) { return os << s.to_string(); }

// Error taxonomy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments handed to an operation (unknown vertex, malformed set, ...).
struct InputError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A size guard or search budget was exceeded.
struct CapacityError : Error {
  using Error::Error;
};

// A caller broke an operation's precondition (missing profile, bad decomposition).
struct ContractViolation : Error {
  using Error::Error;
};

// An internal invariant failed; always a bug or an upstream contract breach.
struct InvariantFailure : Error {
  using Error::Error;
};

struct GenerationError : Error {
  using Error::Error;
};

// Validator output. Violations are data; an empty report means valid.
struct Violation {
  std::string property;  // "P1", "P2", "P3", "rigid", "range"
  std::string detail;
};

struct Report {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string property, std::string detail) {
    violations.push_back({std::move(property), std::move(detail)});
  }
  void append(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.property << ": " << v.detail << '\n';
    return out.str();
  }
};

// Counts of runtime invariant checks performed. A failed check throws
// InvariantFailure, so a finished run with nonzero counters had zero violations.
struct InvariantStats {
  std::uint64_t aux_weight = 0;       // auxiliary matching weights are non-negative
  std::uint64_t pattern_degree = 0;   // pattern degree below the clique number
  std::uint64_t occurrence = 0;       // per-vertex particle multiplicity
  std::uint64_t fan_out = 0;          // total particle size
  std::uint64_t terminal_size = 0;    // terminal caps per call
  std::uint64_t depth = 0;            // recursion depth
  std::uint64_t barrier = 0;          // removed neighborhood only touches terminals
  std::uint64_t bag = 0;              // sink-bag conditions
  std::uint64_t x_neighborhood = 0;   // |N[X] cap B| bound
  std::uint64_t y_bound = 0;          // |Y| bound
  std::uint64_t z_bound = 0;          // |Z| bounds
  std::uint64_t seam = 0;             // component neighborhoods are terminals on both sides
  std::uint64_t profile = 0;          // profile sanity
  std::uint64_t witness = 0;          // witness independence and weight

  std::uint64_t total() const {
    return aux_weight + pattern_degree + occurrence + fan_out + terminal_size + depth + barrier + bag +
           x_neighborhood + y_bound + z_bound + seam + profile + witness;
  }
  void merge(const InvariantStats& o) {
    aux_weight += o.aux_weight;
    pattern_degree += o.pattern_degree;
    occurrence += o.occurrence;
    fan_out += o.fan_out;
    terminal_size += o.terminal_size;
    depth += o.depth;
    barrier += o.barrier;
    bag += o.bag;
    x_neighborhood += o.x_neighborhood;
    y_bound += o.y_bound;
    z_bound += o.z_bound;
    seam += o.seam;
    profile += o.profile;
    witness += o.witness;
  }
};

inline void require_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantFailure(what);
}

// Ceil(log2(n)) for n >= 1; 0 for n <= 1.
inline int ceil_log2(std::size_t n) {
  int r = 0;
  std::size_t p = 1;
  while (p < n) {
    p <<= 1;
    ++r;
  }
  return r;
}

}  // namespace sttt
