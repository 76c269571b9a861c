#ifndef POMSET_SATREDUCE_HPP
#define POMSET_SATREDUCE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pomset/error.hpp"
#include "pomset/rbgraph.hpp"

namespace pomset {

struct Literal {
  std::uint32_t var = 0;  // 1-based
  bool negated = false;

  static Literal from_dimacs(std::int64_t value);
  std::int64_t to_dimacs() const;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

// Variables are 1..num_vars; clauses keep duplicate literals as distinct
// occurrences.
struct CnfInstance {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  // Variables occurring in some clause, ascending.
  std::vector<std::uint32_t> used_variables() const;
};

// `p cnf <vars> <clauses>` header, `c` comment lines, clauses of signed
// integers terminated by 0 (possibly spanning lines), optional `%` end marker.
CnfInstance parse_dimacs(std::string_view text);

// Truth value per variable; index 0 unused.
struct Assignment {
  std::vector<bool> value;

  explicit Assignment(std::uint32_t num_vars = 0) : value(num_vars + 1, false) {}
  bool operator()(std::uint32_t var) const { return value.at(var); }
  bool satisfies(const Literal& l) const { return value.at(l.var) != l.negated; }
  bool satisfies(const CnfInstance& inst) const;

  // "x1=false x2=true ..."
  std::string describe() const;
};

enum class Shortcut { none, sat, unsat };

struct NormalizedCnf {
  CnfInstance instance;
  Shortcut shortcut = Shortcut::none;
  // Variables for which a tautological clause (x | ~x) was appended.
  std::vector<std::uint32_t> completed;
};

// Empty formula -> sat; any empty clause -> unsat. Otherwise every variable
// lacking a polarity gets (x | ~x) appended so that both polarities occur.
NormalizedCnf normalize_cnf(const CnfInstance& inst);

// Position j of clause i, both 0-based.
struct Occurrence {
  std::size_t clause = 0;
  std::size_t position = 0;
  Literal literal;

  std::string label() const;  // "v<i>_<j>", 1-based
};

// Occurrences in (clause, position) order.
std::vector<Occurrence> occurrences(const CnfInstance& inst);

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(std::vector<std::string> failures);
  const std::vector<std::string>& failures() const noexcept { return failures_; }

 private:
  std::vector<std::string> failures_;
};

class MissingPolarity : public Error {
 public:
  explicit MissingPolarity(std::uint32_t var);
};

// Decoding produced something the reduction rules out; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

// DAG over inner vertices 0..inner-1 plus s = inner and t = inner + 1.
struct OccurrenceDag {
  enum class Role { clause, variable };

  Role role = Role::clause;
  std::vector<std::string> labels;  // inner vertices
  std::vector<Arc> arcs;            // sorted, no duplicates

  Vertex inner() const { return static_cast<Vertex>(labels.size()); }
  Vertex s() const { return inner(); }
  Vertex t() const { return inner() + 1; }
  Vertex size() const { return inner() + 2; }
  bool has_arc(Vertex u, Vertex v) const;
};

// Layered choice DAG: s -> clause 1 -> ... -> clause n -> t, complete
// bipartite between consecutive clauses.
OccurrenceDag build_gcl(const CnfInstance& normalized);

// Polarity choice DAG from t to s: per variable in ascending order pick a
// polarity and walk all its occurrences. Throws MissingPolarity when a used
// variable lacks one polarity.
OccurrenceDag build_gvar(const CnfInstance& normalized);

// True iff the DAG has no directed cycle.
bool is_acyclic(const OccurrenceDag& g);

// Lists every assumption on the pair (g1 from s to t, g2 from t to s) that
// fails; empty when the superimposition applies.
std::vector<std::string> superimpose_hypothesis_failures(const OccurrenceDag& g1,
                                                         const OccurrenceDag& g2);

// Vertex layout: s1, s2, t1, t2, then up/down per inner vertex.
struct SuperimposedGraph {
  struct Origin {
    enum class Kind { s1, s2, t1, t2, up, down };
    Kind kind;
    Vertex inner;  // for up/down
  };

  MatchedDigraph graph;
  std::vector<Arc> layer1;  // from g1, sorted
  std::vector<Arc> layer2;  // from g2, sorted
  std::vector<Origin> origin;

  static constexpr Vertex s1 = 0, s2 = 1, t1 = 2, t2 = 3;
  static constexpr Vertex up(Vertex inner) { return 4 + 2 * inner; }
  static constexpr Vertex down(Vertex inner) { return 5 + 2 * inner; }
};

// Throws HypothesisViolation when g1/g2 do not qualify.
SuperimposedGraph superimpose(const OccurrenceDag& g1, const OccurrenceDag& g2);

// True iff contracting every matching pair of g turns `arcs` into an acyclic
// digraph; implies (V, M + arcs) has no alternating circuit.
bool quotient_acyclic(const MatchedDigraph& g, const std::vector<Arc>& arcs);

struct EncodedCnf {
  CnfInstance original;
  NormalizedCnf normalized;
  std::vector<Occurrence> occurrences;       // of the normalized instance
  std::optional<SuperimposedGraph> graph;    // absent when a shortcut applies
};

EncodedCnf encode(const CnfInstance& inst);

// Matched digraph standing for the encoding, including the shortcut cases:
// unsat gives the empty graph, sat a 4-vertex graph with one circuit.
MatchedDigraph encoded_graph(const EncodedCnf& enc);

// Counts how often the witness steps along (t1, t2) and (s2, s1).
struct Crossings {
  int t1_t2 = 0;
  int s2_s1 = 0;
};
Crossings crossings(const AltCircuitWitness& w);

// Reads the variable side (t2 ... s2) of the witness as the set of false
// literals. Throws MalformedWitness on a witness that does not validate,
// InternalError if the result fails the original instance.
Assignment decode_circuit(const EncodedCnf& enc, const AltCircuitWitness& w);

struct SolveResult {
  bool sat = false;
  std::optional<Assignment> assignment;
  Shortcut shortcut = Shortcut::none;
};

SolveResult solve(const CnfInstance& inst, const SearchOptions& options = {});

}  // namespace pomset

#endif  // POMSET_SATREDUCE_HPP
