#ifndef POMSET_RBGRAPH_HPP
#define POMSET_RBGRAPH_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pomset/error.hpp"

namespace pomset {

using Vertex = std::uint32_t;

struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Unvalidated graph as read from a file: vertices by name, arcs and matching
// arcs as ordered name pairs. The matching is a subset of the arcs; arcs that
// are also matching arcs are absorbed into the matching.
struct RawGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::vector<std::pair<std::string, std::string>> matching;
};

struct Violation {
  enum class Kind {
    duplicate_vertex,
    unknown_vertex,
    self_loop,
    matching_not_subset_of_arcs,
    vertex_not_perfectly_matched,
    matching_not_symmetric,
  };
  Kind kind;
  std::string u;
  std::string v;  // empty when the violation concerns a single vertex

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Thrown by validation with every violated invariant, in input order.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<Violation> violations_;
};

// Node-expansion budget of the circuit search was exhausted.
class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(std::uint64_t budget);
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

// A witness handed back for decoding does not validate on its graph.
class MalformedWitness : public Error {
 public:
  using Error::Error;
};

// A digraph with a direction-symmetric perfect matching. Vertices are dense
// indices 0..size()-1 carrying a name; index order is the deterministic order
// used by every search. Matching and non-matching arcs are stored as disjoint
// labeled sets, so a non-matching arc may run parallel to a matching one when
// the graph is assembled programmatically (never through validate()).
class MatchedDigraph {
 public:
  MatchedDigraph() = default;

  // Checks the matching invariants (no self-loops, symmetric perfect
  // matching) and throws ValidationError listing every failure.
  static MatchedDigraph assemble(
      std::vector<std::string> names,
      std::span<const std::pair<Vertex, Vertex>> matching_pairs,
      std::span<const Arc> nonmatching);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Vertex> find(std::string_view name) const;

  Vertex mate(Vertex v) const { return mate_.at(v); }

  // Non-matching out- and in-neighbours, ascending.
  std::span<const Vertex> successors(Vertex v) const { return out_.at(v); }
  std::span<const Vertex> predecessors(Vertex v) const { return in_.at(v); }

  bool has_matching_arc(Vertex u, Vertex v) const;
  bool has_nonmatching_arc(Vertex u, Vertex v) const;
  bool has_arc(Vertex u, Vertex v) const {
    return has_matching_arc(u, v) || has_nonmatching_arc(u, v);
  }

  // Non-matching arcs, lexicographic.
  std::vector<Arc> nonmatching_arcs() const;
  // Matching pairs {u, mate(u)} with u < mate(u), ascending.
  std::vector<std::pair<Vertex, Vertex>> matching_pairs() const;
  std::size_t nonmatching_arc_count() const noexcept { return arc_count_; }

 private:
  std::vector<std::string> names_;
  std::vector<Vertex> mate_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::size_t arc_count_ = 0;
};

// Builds a MatchedDigraph from a raw declaration, reading the arc set
// literally: non-matching arcs are A \ M.
MatchedDigraph validate(const RawGraph& raw);

// Cyclically indexed vertex sequence.
struct Circuit {
  std::vector<Vertex> seq;

  std::size_t length() const noexcept { return seq.size(); }
  Vertex at(std::ptrdiff_t i) const;  // index taken mod length
  friend bool operator==(const Circuit&, const Circuit&) = default;
};

// A circuit plus, for every step seq[i] -> seq[i+1], whether that step uses
// a matching arc.
struct AltCircuitWitness {
  Circuit circuit;
  std::vector<bool> matching_step;

  friend bool operator==(const AltCircuitWitness&,
                         const AltCircuitWitness&) = default;
};

// True iff c is vertex-elementary, has length >= 2, and its steps can be
// labeled alternately matching / non-matching by arcs of g (wrap-around
// included). Never throws on malformed input.
bool is_alternating_circuit(const MatchedDigraph& g, const Circuit& c);

// Stricter check that also verifies the witness' own step labels.
bool is_valid_witness(const MatchedDigraph& g, const AltCircuitWitness& w);

struct SearchOptions {
  // Maximum number of search-node expansions; unlimited when empty.
  std::optional<std::uint64_t> budget;
  // Start vertices tried first, in this order. The remaining vertices follow
  // in index order.
  std::vector<Vertex> preferred_starts;
};

// Exact search. Returns the first alternating circuit in the deterministic
// order: starts in preferred-then-index order, each circuit beginning with the
// matching arc (start, mate(start)), successors ascending.
std::optional<AltCircuitWitness> find_alternating_circuit(
    const MatchedDigraph& g, const SearchOptions& options = {});

// Every arc reversed; the matching is fixed by symmetry.
MatchedDigraph reversed(const MatchedDigraph& g);

// The sub-graph induced by the vertices for which keep[v] is true. keep must
// be closed under mate().
MatchedDigraph induced(const MatchedDigraph& g, const std::vector<bool>& keep);

}  // namespace pomset

#endif  // POMSET_RBGRAPH_HPP
