#include "pomset/oracles.hpp"

#include <functional>
#include <set>

namespace pomset::oracles {

namespace {

bool holds(const CnfInstance& inst, std::uint64_t mask) {
  for (const auto& clause : inst.clauses) {
    bool satisfied = false;
    for (const auto& l : clause) {
      const bool value = (mask >> (l.var - 1)) & 1u;
      if (value != l.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return false;
  }
  return true;
}

void guard_sat(const CnfInstance& inst) {
  if (inst.num_vars > kMaxSatVariables) {
    throw TooLarge("brute force limited to " + std::to_string(kMaxSatVariables) +
                   " variables, got " + std::to_string(inst.num_vars));
  }
}

}  // namespace

std::optional<Assignment> brute_force_sat(const CnfInstance& inst) {
  guard_sat(inst);
  const std::uint64_t rows = std::uint64_t{1} << inst.num_vars;
  for (std::uint64_t mask = 0; mask < rows; ++mask) {
    if (!holds(inst, mask)) continue;
    Assignment a(inst.num_vars);
    for (std::uint32_t v = 1; v <= inst.num_vars; ++v) a.value[v] = (mask >> (v - 1)) & 1u;
    return a;
  }
  return std::nullopt;
}

std::uint64_t count_models(const CnfInstance& inst) {
  guard_sat(inst);
  std::uint64_t count = 0;
  const std::uint64_t rows = std::uint64_t{1} << inst.num_vars;
  for (std::uint64_t mask = 0; mask < rows; ++mask) count += holds(inst, mask);
  return count;
}

std::vector<std::vector<Vertex>> enumerate_st_paths(const OccurrenceDag& g,
                                                    Vertex from, Vertex to) {
  const Vertex n = g.size();
  std::vector<std::vector<Vertex>> out(n);
  for (const Arc& a : g.arcs) out.at(a.from).push_back(a.to);
  for (auto& list : out) std::sort(list.begin(), list.end());

  // Three-colour DFS cycle detection.
  std::vector<int> colour(n, 0);
  std::function<bool(Vertex)> cyclic = [&](Vertex v) {
    colour[v] = 1;
    for (Vertex w : out[v]) {
      if (colour[w] == 1) return true;
      if (colour[w] == 0 && cyclic(w)) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (Vertex v = 0; v < n; ++v) {
    if (colour[v] == 0 && cyclic(v)) throw CyclicInput("input graph has a cycle");
  }

  std::vector<std::vector<Vertex>> paths;
  std::vector<Vertex> current{from};
  std::function<void(Vertex)> walk = [&](Vertex v) {
    if (v == to) {
      paths.push_back(current);
      return;
    }
    for (Vertex w : out[v]) {
      current.push_back(w);
      walk(w);
      current.pop_back();
    }
  };
  walk(from);
  return paths;
}

std::vector<AltCircuitWitness> enumerate_alternating_circuits(
    const MatchedDigraph& g) {
  const std::size_t n = g.size();
  if (n > kMaxCircuitVertices) {
    throw TooLarge("circuit enumeration limited to " +
                   std::to_string(kMaxCircuitVertices) + " vertices, got " +
                   std::to_string(n));
  }
  // Labeled adjacency: (target, is_matching).
  std::vector<std::vector<std::pair<Vertex, bool>>> out(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.has_matching_arc(u, v)) out[u].push_back({v, true});
      if (g.has_nonmatching_arc(u, v)) out[u].push_back({v, false});
    }
  }

  std::set<std::vector<Vertex>> seen;
  std::vector<AltCircuitWitness> found;
  std::vector<Vertex> seq;
  std::vector<bool> labels;
  std::vector<bool> on_path(n, false);

  std::function<void(Vertex, Vertex)> grow = [&](Vertex start, Vertex v) {
    for (const auto& [w, matching] : out[v]) {
      if (!labels.empty() && labels.back() == matching) continue;
      if (w == start) {
        if (seq.size() >= 2 && labels.front() != matching &&
            seen.insert(seq).second) {
          AltCircuitWitness wit;
          wit.circuit.seq = seq;
          wit.matching_step = labels;
          wit.matching_step.push_back(matching);
          found.push_back(std::move(wit));
        }
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = true;
      seq.push_back(w);
      labels.push_back(matching);
      grow(start, w);
      labels.pop_back();
      seq.pop_back();
      on_path[w] = false;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    seq = {s};
    on_path[s] = true;
    grow(s, s);
    on_path[s] = false;
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.circuit.seq < b.circuit.seq;
  });
  return found;
}

std::uint64_t count_disjoint_path_pairs(const OccurrenceDag& g1,
                                        const OccurrenceDag& g2) {
  if (auto failures = superimpose_hypothesis_failures(g1, g2); !failures.empty()) {
    throw HypothesisViolation(std::move(failures));
  }
  const auto forward = enumerate_st_paths(g1, g1.s(), g1.t());
  const auto backward = enumerate_st_paths(g2, g2.t(), g2.s());
  const Vertex inner = g1.inner();

  std::vector<std::vector<bool>> back_sets;
  for (const auto& p : backward) {
    std::vector<bool> in(inner, false);
    for (Vertex v : p) {
      if (v < inner) in[v] = true;
    }
    back_sets.push_back(std::move(in));
  }
  std::uint64_t count = 0;
  for (const auto& p : forward) {
    for (const auto& in : back_sets) {
      bool disjoint = true;
      for (Vertex v : p) {
        if (v < inner && in[v]) {
          disjoint = false;
          break;
        }
      }
      count += disjoint;
    }
  }
  return count;
}

}  // namespace pomset::oracles
