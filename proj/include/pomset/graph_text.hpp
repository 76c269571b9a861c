#ifndef POMSET_GRAPH_TEXT_HPP
#define POMSET_GRAPH_TEXT_HPP

#include <string>
#include <string_view>

#include "pomset/rbgraph.hpp"

namespace pomset {

// Line-based graph format, `#` starts a comment:
//   v <name>      vertex
//   m <u> <v>     matching edge (both directions)
//   a <u> <v>     directed arc
//   e <u> <v>     undirected non-matching edge (both directions)
// Vertices mentioned before (or without) a `v` line are declared implicitly,
// in order of first mention.
RawGraph parse_graph_text(std::string_view text);

// Parse + validate.
MatchedDigraph read_graph(std::string_view text);

// Canonical serialization: all `v` lines, then `m` pairs, then `e` edges for
// symmetric non-matching pairs, then `a` arcs for the rest. Round-trips
// through read_graph for any graph without arcs parallel to the matching.
std::string write_graph(const MatchedDigraph& g);

// Graphviz rendering. Matching edges are bold and undirected, symmetric
// non-matching pairs undirected, directed-only arcs keep their arrowhead. The
// steps of a witness are drawn as separate red arcs.
std::string to_dot(const MatchedDigraph& g,
                   const AltCircuitWitness* witness = nullptr);

}  // namespace pomset

#endif  // POMSET_GRAPH_TEXT_HPP
