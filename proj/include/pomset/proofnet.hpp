#ifndef POMSET_PROOFNET_HPP
#define POMSET_PROOFNET_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pomset/error.hpp"
#include "pomset/rbgraph.hpp"

namespace pomset {

enum class Connective { atom, tensor, par, before };

// Immutable formula tree. Copies share structure.
class Formula {
 public:
  static Formula atom(std::string name, bool dual = false);
  static Formula tensor(Formula left, Formula right);
  static Formula par(Formula left, Formula right);
  static Formula before(Formula left, Formula right);
  static Formula binary(Connective kind, Formula left, Formula right);

  Connective kind() const;
  bool is_atom() const { return kind() == Connective::atom; }
  // Atoms only.
  const std::string& name() const;
  bool dual() const;
  // Binary nodes only.
  const Formula& left() const;
  const Formula& right() const;

  std::size_t leaf_count() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// `(A * B)` tensor, `(A | B)` par, `(A < B)` before; atoms `name` / `name^`.
std::string to_string(const Formula& f);

// Every binary node is parenthesized, so `(a < b < c)` is rejected. Atom
// names match [a-z][a-z0-9_]*.
Formula parse_formula(std::string_view text);

// Position of a subformula: conclusion index plus the L/R steps from its root.
struct Address {
  std::size_t conclusion = 0;
  std::string path;

  friend auto operator<=>(const Address&, const Address&) = default;
};

// `<conclusion>:<path>`, with `-` for the empty path.
std::string to_string(const Address& a);
Address parse_address(std::string_view text);

struct AtomOccurrence {
  Address address;
  std::string name;
  bool dual = false;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

// A web arc of the atom-level translation coincides with an axiom.
class ParallelArcCollision : public StructureError {
 public:
  ParallelArcCollision(const Address& a, const Address& b);
};

// Cut-free proof structure: conclusion formulas plus axiom links that pair
// every atom occurrence with a dual occurrence of the same name.
class ProofStructure {
 public:
  using Axiom = std::pair<Address, Address>;

  // Throws StructureError when the axioms are not a perfect matching of the
  // atom occurrences into dual pairs.
  static ProofStructure make(std::vector<Formula> conclusions,
                             std::vector<Axiom> axioms);

  const std::vector<Formula>& conclusions() const noexcept {
    return conclusions_;
  }
  // Normalized (first < second), sorted.
  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }

  // Conclusion order, left to right within each conclusion.
  std::vector<AtomOccurrence> atoms() const;

  // Throws StructureError for an address outside the structure.
  const Formula& at(const Address& a) const;

 private:
  std::vector<Formula> conclusions_;
  std::vector<Axiom> axioms_;
};

// File format: `conc <formula>` per conclusion, `ax <addr> <addr>` per axiom,
// `#` comments.
ProofStructure parse_structure(std::string_view text);
std::string write_structure(const ProofStructure& ps);

// Arcs over the leaves of f (numbered left to right): tensor joins its sides
// in both directions, before joins left to right, par adds nothing.
std::vector<Arc> relation_web(const Formula& f);

enum class End { top, bottom };

struct RbVertex {
  Address formula;
  End end;
};

struct RbTranslation {
  MatchedDigraph graph;
  std::vector<RbVertex> origin;  // indexed by vertex
};

// Link-level RB-graph. Every subformula occurrence A is a matching edge
// top(A) -- bottom(A); top is the side facing the axioms. Non-matching arcs:
//   axiom {A, B}:      top(A) <-> top(B)
//   C = (A * B):       bottom(A) <-> bottom(B), bottom(A|B) <-> top(C)
//   C = (A | B):       bottom(A|B) <-> top(C)
//   C = (A < B):       bottom(A) -> bottom(B),  bottom(A|B) <-> top(C)
// Vertices are numbered in preorder over the conclusions, top before bottom.
// The structure is a proof net iff this graph has no alternating circuit.
RbTranslation to_rb(const ProofStructure& ps);

struct WebTranslation {
  MatchedDigraph graph;
  std::vector<Address> atom;  // indexed by vertex
};

// Atom-level translation: vertices are atom occurrences, the matching is the
// axioms, non-matching arcs are the relation webs of the conclusions. Throws
// ParallelArcCollision if a web arc joins the two ends of an axiom.
//
// Coarser than to_rb: a circuit may cross the same tensor twice through
// different atoms of a par, which the link-level graph forbids.
WebTranslation to_web_graph(const ProofStructure& ps);

struct Verdict {
  bool correct = true;
  std::optional<AltCircuitWitness> witness;  // on to_rb(ps).graph
  std::vector<AtomOccurrence> reading;       // atoms crossed by the witness

  // "CORRECT", or "INCORRECT" followed by `name@address` per atom.
  std::string describe() const;
};

// Atoms crossed by a witness on the link-level graph, in circuit order.
std::vector<AtomOccurrence> atom_reading(const ProofStructure& ps,
                                         const RbTranslation& rb,
                                         const AltCircuitWitness& w);

Verdict check_correctness(const ProofStructure& ps,
                          const SearchOptions& options = {});

}  // namespace pomset

#endif  // POMSET_PROOFNET_HPP
