#ifndef POMSET_PROOFIFY_HPP
#define POMSET_PROOFIFY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pomset/proofnet.hpp"
#include "pomset/rbgraph.hpp"

namespace pomset {

// Partition of a matched digraph's arcs; symmetric pairs are listed once with
// the smaller vertex first.
struct EdgeClassification {
  std::vector<std::pair<Vertex, Vertex>> matching;
  std::vector<std::pair<Vertex, Vertex>> undirected;
  std::vector<Arc> directed;
};

// A matched pair one of whose vertices has no non-matching arc at all. No
// alternating circuit can pass through such a pair.
class IsolatedMatchedPair : public Error {
 public:
  IsolatedMatchedPair(std::string u, std::string v);
  const std::string& u() const noexcept { return u_; }
  const std::string& v() const noexcept { return v_; }

 private:
  std::string u_, v_;
};

EdgeClassification classify(const MatchedDigraph& g);

// Removes, until none is left, every matched pair that classify() would
// reject. Preserves the existence of alternating circuits.
MatchedDigraph drop_isolated(const MatchedDigraph& g);

// What each piece of the produced structure stands for.
struct ProofifyMap {
  enum class Role {
    port,         // atom: endpoint of a source edge at `vertex`
    bundle,       // par node grouping the ports of `vertex`
    tensor,       // conclusion for the matching pair {vertex, other}
    gadget_atom,  // inner atom of the gadget of arc (vertex, other)
    gadget,       // before-conclusion of the gadget of arc (vertex, other)
  };
  struct Entry {
    Role role;
    Vertex vertex;
    Vertex other;  // for ports: the far endpoint of the edge
  };
  std::map<Address, Entry> entries;

  // Vertex owning a port or bundle node; empty for anything else.
  std::optional<Vertex> owner(const Address& a) const;
};

struct ProofifyOutput {
  MatchedDigraph source;
  ProofStructure structure;
  ProofifyMap map;
};

// Encodes g so that the structure is incorrect iff g has an alternating
// circuit. Matching pairs become tensor conclusions over par-bundles of
// ports; undirected edges become axioms between ports; a directed-only arc
// (u, v) becomes an axiom port(u)--l, a before-conclusion (l < r) and an
// axiom r--port(v).
ProofifyOutput proofify(const MatchedDigraph& g);

// Maps a witness on to_rb(out.structure) back to an alternating circuit of
// out.source. Throws MalformedWitness when w does not validate there.
Circuit lift_witness(const ProofifyOutput& out, const AltCircuitWitness& w);

// Line-based dump of the map, one `<address> <role> <vertex> [<vertex>]` per
// entry in address order.
std::string write_map(const ProofifyOutput& out);

}  // namespace pomset

#endif  // POMSET_PROOFIFY_HPP
