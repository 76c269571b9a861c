#ifndef POMSET_ORACLES_HPP
#define POMSET_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pomset/rbgraph.hpp"
#include "pomset/satreduce.hpp"

// Brute-force references. Deliberately naive and written without the
// optimized search so that they can referee it.
namespace pomset::oracles {

class TooLarge : public Error {
 public:
  using Error::Error;
};

class CyclicInput : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint32_t kMaxSatVariables = 24;
inline constexpr std::size_t kMaxCircuitVertices = 20;

// First model in binary-counting order of Y (bit k-1 set <=> x_k true).
std::optional<Assignment> brute_force_sat(const CnfInstance& inst);
std::uint64_t count_models(const CnfInstance& inst);

// All paths from `from` to `to`, depth-first with ascending successors.
std::vector<std::vector<Vertex>> enumerate_st_paths(const OccurrenceDag& g,
                                                    Vertex from, Vertex to);

// Every alternating circuit once, rotated to start at its smallest vertex,
// in lexicographic order.
std::vector<AltCircuitWitness> enumerate_alternating_circuits(
    const MatchedDigraph& g);

// Pairs (P1 s->t in g1, P2 t->s in g2) whose inner vertices are disjoint.
std::uint64_t count_disjoint_path_pairs(const OccurrenceDag& g1,
                                        const OccurrenceDag& g2);

}  // namespace pomset::oracles

#endif  // POMSET_ORACLES_HPP
