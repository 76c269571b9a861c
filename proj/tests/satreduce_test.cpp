#include "pomset/satreduce.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pomset/oracles.hpp"
#include "test_support.hpp"

namespace pomset {
namespace {

using testing::cnf;
using G = SuperimposedGraph;

// Inner vertex indices of an occurrence DAG, by label.
Vertex at(const OccurrenceDag& g, const std::string& label) {
  const auto it = std::find(g.labels.begin(), g.labels.end(), label);
  EXPECT_NE(it, g.labels.end()) << label;
  return static_cast<Vertex>(it - g.labels.begin());
}

// Two-vertex DAG pair over {u, v}: G1 runs s -> g1_via -> t and G2 runs
// t -> g2_via -> s.
std::pair<OccurrenceDag, OccurrenceDag> tiny_pair(Vertex g1_via, Vertex g2_via) {
  OccurrenceDag g1{OccurrenceDag::Role::clause, {"u", "v"}, {}};
  g1.arcs = {{g1_via, g1.t()}, {g1.s(), g1_via}};
  std::sort(g1.arcs.begin(), g1.arcs.end());
  OccurrenceDag g2{OccurrenceDag::Role::variable, {"u", "v"}, {}};
  g2.arcs = {{g2_via, g2.s()}, {g2.t(), g2_via}};
  std::sort(g2.arcs.begin(), g2.arcs.end());
  return {g1, g2};
}

TEST(DimacsTest, ParsesHeaderAndClauses) {
  const CnfInstance inst = parse_dimacs("c example\np cnf 2 2\n1 2 0\n-1 0\n");
  EXPECT_EQ(inst.num_vars, 2u);
  ASSERT_EQ(inst.clauses.size(), 2u);
  EXPECT_EQ(inst.clauses[1], (Clause{{1, true}}));
}

TEST(DimacsTest, ClausesMaySpanLines) {
  const CnfInstance inst = parse_dimacs("p cnf 3 2\n1 -2\n 3 0 -3\n0\n");
  EXPECT_EQ(inst.clauses.size(), 2u);
  EXPECT_EQ(inst.clauses[0].size(), 3u);
}

TEST(DimacsTest, EmptyClause) {
  const CnfInstance inst = parse_dimacs("p cnf 1 1\n0\n");
  ASSERT_EQ(inst.clauses.size(), 1u);
  EXPECT_TRUE(inst.clauses[0].empty());
}

TEST(DimacsTest, Errors) {
  EXPECT_THROW(parse_dimacs("1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 1 1\n1 a 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p dnf 1 1\n1 0\n"), ParseError);
}

TEST(LiteralTest, DimacsRoundTrip) {
  for (std::int64_t v : {1, -1, 7, -12}) EXPECT_EQ(Literal::from_dimacs(v).to_dimacs(), v);
}

TEST(AssignmentTest, Describe) {
  Assignment a(2);
  a.value[2] = true;
  EXPECT_EQ(a.describe(), "x1=false x2=true");
  EXPECT_TRUE(a.satisfies(cnf(2, {{1, 2}, {-1}})));
  EXPECT_FALSE(a.satisfies(cnf(2, {{1}})));
}

TEST(NormalizeTest, CompletesMissingPolarity) {
  const NormalizedCnf n = normalize_cnf(cnf(2, {{1, 2}, {-1}}));
  EXPECT_EQ(n.shortcut, Shortcut::none);
  EXPECT_EQ(n.instance.clauses.size(), 3u);
  EXPECT_EQ(n.instance.used_variables().size(), 2u);
  EXPECT_EQ(n.instance.clauses[2], (Clause{{2, false}, {2, true}}));
  EXPECT_EQ(n.completed, (std::vector<std::uint32_t>{2}));
}

TEST(NormalizeTest, BothPolaritiesUnchanged) {
  const CnfInstance inst = cnf(1, {{1}, {-1}});
  const NormalizedCnf n = normalize_cnf(inst);
  EXPECT_EQ(n.instance.clauses, inst.clauses);
  EXPECT_TRUE(n.completed.empty());
}

TEST(NormalizeTest, Shortcuts) {
  EXPECT_EQ(normalize_cnf(cnf(3, {})).shortcut, Shortcut::sat);
  EXPECT_EQ(normalize_cnf(cnf(2, {{1}, {}})).shortcut, Shortcut::unsat);
}

TEST(NormalizeTest, UnusedVariablesIgnored) {
  const NormalizedCnf n = normalize_cnf(cnf(5, {{2}, {-2}}));
  EXPECT_EQ(n.instance.used_variables(), (std::vector<std::uint32_t>{2}));
  EXPECT_TRUE(n.completed.empty());
}

TEST(GclTest, Example) {
  const OccurrenceDag g = build_gcl(cnf(2, {{1, 2}, {-1}}));
  const Vertex v11 = at(g, "v1_1"), v12 = at(g, "v1_2"), v21 = at(g, "v2_1");
  std::vector<Arc> expected = {{v11, v21}, {v12, v21}, {g.s(), v11}, {g.s(), v12}, {v21, g.t()}};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(g.arcs, expected);
  EXPECT_TRUE(is_acyclic(g));
  EXPECT_EQ(oracles::enumerate_st_paths(g, g.s(), g.t()).size(), 2u);
}

TEST(GclTest, SingleClause) {
  const OccurrenceDag g = build_gcl(cnf(1, {{1}}));
  const auto paths = oracles::enumerate_st_paths(g, g.s(), g.t());
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0], (std::vector<Vertex>{g.s(), 0, g.t()}));
}

TEST(GvarTest, Example) {
  const OccurrenceDag g = build_gvar(normalize_cnf(cnf(2, {{1, 2}, {-1}})).instance);
  const Vertex v11 = at(g, "v1_1"), v12 = at(g, "v1_2"), v21 = at(g, "v2_1"),
               v31 = at(g, "v3_1"), v32 = at(g, "v3_2");
  std::vector<Arc> expected = {
      {v12, v31},                                            // successor
      {v11, v12}, {v11, v32}, {v21, v12}, {v21, v32},        // polarity bridges
      {g.t(), v11}, {g.t(), v21},                            // from t
      {v31, g.s()}, {v32, g.s()},                            // into s
  };
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(g.arcs, expected);
  EXPECT_TRUE(is_acyclic(g));
  EXPECT_EQ(oracles::enumerate_st_paths(g, g.t(), g.s()).size(), 4u);
}

TEST(GvarTest, SingleVariable) {
  const OccurrenceDag g = build_gvar(cnf(1, {{1}, {-1}}));
  const auto paths = oracles::enumerate_st_paths(g, g.t(), g.s());
  EXPECT_EQ(paths, (std::vector<std::vector<Vertex>>{{g.t(), 0, g.s()}, {g.t(), 1, g.s()}}));
}

TEST(GvarTest, MissingPolarity) {
  EXPECT_THROW(build_gvar(cnf(2, {{1, 2}, {-1}})), MissingPolarity);
}

TEST(GvarProperty, PathsVisitOnePolarityPerVariable) {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 100; ++round) {
    const CnfInstance inst =
        normalize_cnf(testing::random_cnf(rng, 4, 5, 1, 3)).instance;
    const OccurrenceDag g = build_gvar(inst);
    const auto occ = occurrences(inst);
    const auto paths = oracles::enumerate_st_paths(g, g.t(), g.s());
    EXPECT_EQ(paths.size(), std::size_t{1} << inst.used_variables().size());
    std::set<std::vector<bool>> assignments;
    for (const auto& p : paths) {
      std::set<Vertex> visited(p.begin() + 1, p.end() - 1);
      std::vector<bool> negated_side(inst.num_vars + 1, false);
      for (Vertex v : visited) negated_side[occ[v].literal.var] = occ[v].literal.negated;
      // Every occurrence of the chosen polarity is visited, none of the other.
      for (Vertex v = 0; v < occ.size(); ++v) {
        const bool chosen = occ[v].literal.negated == negated_side[occ[v].literal.var];
        EXPECT_EQ(visited.count(v) == 1, chosen);
      }
      assignments.insert(negated_side);
    }
    EXPECT_EQ(assignments.size(), paths.size());
  }
}

TEST(SuperimposeTest, DisjointPathsGiveOneCircuit) {
  const auto [g1, g2] = tiny_pair(0, 1);
  const SuperimposedGraph sg = superimpose(g1, g2);
  EXPECT_EQ(sg.graph.size(), 8u);
  const auto all = oracles::enumerate_alternating_circuits(sg.graph);
  ASSERT_EQ(all.size(), 1u);
  std::vector<std::string> names;
  for (Vertex v : all[0].circuit.seq) names.push_back(sg.graph.name(v));
  EXPECT_EQ(names, (std::vector<std::string>{"s1", "uu", "ud", "t1", "t2", "vd", "vu", "s2"}));
  EXPECT_EQ(oracles::count_disjoint_path_pairs(g1, g2), 1u);
}

TEST(SuperimposeTest, SharedVertexGivesNone) {
  const auto [g1, g2] = tiny_pair(0, 0);
  const SuperimposedGraph sg = superimpose(g1, g2);
  EXPECT_FALSE(find_alternating_circuit(sg.graph));
  EXPECT_TRUE(oracles::enumerate_alternating_circuits(sg.graph).empty());
  EXPECT_EQ(oracles::count_disjoint_path_pairs(g1, g2), 0u);
}

TEST(SuperimposeTest, LayersDisjointAndQuotientsAcyclic) {
  const auto [g1, g2] = tiny_pair(0, 1);
  const SuperimposedGraph sg = superimpose(g1, g2);
  std::set<Arc> seen;
  for (auto [u, v] : sg.graph.matching_pairs()) {
    seen.insert({u, v});
    seen.insert({v, u});
  }
  for (const Arc& a : sg.layer1) EXPECT_TRUE(seen.insert(a).second);
  for (const Arc& a : sg.layer2) EXPECT_TRUE(seen.insert(a).second);
  EXPECT_TRUE(quotient_acyclic(sg.graph, sg.layer1));
  EXPECT_TRUE(quotient_acyclic(sg.graph, sg.layer2));
  // Layer 1 followed by layer 2 closes the loop.
  std::vector<Arc> both = sg.layer1;
  both.insert(both.end(), sg.layer2.begin(), sg.layer2.end());
  EXPECT_FALSE(quotient_acyclic(sg.graph, both));
}

TEST(SuperimposeTest, HypothesisViolations) {
  auto [g1, g2] = tiny_pair(0, 1);
  g1.arcs.push_back({g1.t(), 0});  // t gains an outgoing arc
  std::sort(g1.arcs.begin(), g1.arcs.end());
  EXPECT_FALSE(superimpose_hypothesis_failures(g1, g2).empty());
  EXPECT_THROW(superimpose(g1, g2), HypothesisViolation);

  auto [h1, h2] = tiny_pair(0, 1);
  h1.arcs = {{0, 1}, {1, 0}, {h1.s(), 0}, {1, h1.t()}};
  std::sort(h1.arcs.begin(), h1.arcs.end());
  EXPECT_THROW(superimpose(h1, h2), HypothesisViolation);

  auto [k1, k2] = tiny_pair(0, 1);
  k1.arcs.push_back({k1.s(), k1.t()});
  std::sort(k1.arcs.begin(), k1.arcs.end());
  EXPECT_THROW(superimpose(k1, k2), HypothesisViolation);

  auto [r1, r2] = tiny_pair(0, 1);
  r2.arcs.push_back({0, r2.t()});  // t of the second graph gains an incoming arc
  std::sort(r2.arcs.begin(), r2.arcs.end());
  EXPECT_THROW(superimpose(r1, r2), HypothesisViolation);
}

TEST(SuperimposeProperty, CircuitsMatchDisjointPairs) {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 60; ++round) {
    const auto [g1, g2] = testing::random_dag_pair(rng, 1 + round % 6, 0.4);
    const SuperimposedGraph sg = superimpose(g1, g2);
    const auto all = oracles::enumerate_alternating_circuits(sg.graph);
    EXPECT_EQ(all.size(), oracles::count_disjoint_path_pairs(g1, g2));
    for (const auto& w : all) {
      const Crossings c = crossings(w);
      EXPECT_EQ(c.t1_t2, 1);
      EXPECT_EQ(c.s2_s1, 1);
    }
  }
}

TEST(EncodeTest, ExampleSize) {
  const EncodedCnf enc = encode(cnf(2, {{1, 2}, {-1}}));
  ASSERT_TRUE(enc.graph);
  EXPECT_EQ(enc.graph->graph.size(), 14u);
  EXPECT_EQ(enc.occurrences.size(), 5u);
  EXPECT_EQ(enc.graph->graph.name(G::up(0)), "v1_1u");
  EXPECT_EQ(enc.graph->graph.name(G::down(4)), "v3_2d");
}

TEST(EncodeTest, ContradictionHasNoCircuit) {
  const EncodedCnf enc = encode(cnf(1, {{1}, {-1}}));
  ASSERT_TRUE(enc.graph);
  EXPECT_FALSE(find_alternating_circuit(enc.graph->graph));
}

TEST(EncodeTest, ShortcutGraphs) {
  const EncodedCnf sat = encode(cnf(2, {}));
  EXPECT_FALSE(sat.graph);
  EXPECT_TRUE(find_alternating_circuit(encoded_graph(sat)));
  const EncodedCnf unsat = encode(cnf(2, {{1}, {}}));
  EXPECT_FALSE(unsat.graph);
  EXPECT_TRUE(encoded_graph(unsat).empty());
}

TEST(DecodeTest, Example) {
  const EncodedCnf enc = encode(cnf(2, {{1, 2}, {-1}}));
  const auto w = find_alternating_circuit(enc.graph->graph);
  ASSERT_TRUE(w);
  const Assignment a = decode_circuit(enc, *w);
  EXPECT_FALSE(a(1));
  EXPECT_TRUE(a(2));
}

TEST(DecodeTest, RejectsForeignWitness) {
  const EncodedCnf enc = encode(cnf(2, {{1, 2}, {-1}}));
  EXPECT_THROW(decode_circuit(enc, AltCircuitWitness{}), MalformedWitness);
  EXPECT_THROW(decode_circuit(encode(cnf(1, {})), AltCircuitWitness{}), MalformedWitness);
}

TEST(DecodeTest, InconsistentMapIsInternalError) {
  EncodedCnf enc = encode(cnf(2, {{1, 2}, {-1}}));
  const auto w = find_alternating_circuit(enc.graph->graph);
  ASSERT_TRUE(w);
  // Corrupt the occurrence map so the variable path sees no occurrence of x2.
  for (auto& o : enc.occurrences) o.literal.var = 1;
  EXPECT_THROW(decode_circuit(enc, *w), InternalError);
}

TEST(SolveTest, Examples) {
  const SolveResult ex = solve(cnf(2, {{1, 2}, {-1}}));
  ASSERT_TRUE(ex.sat);
  EXPECT_FALSE((*ex.assignment)(1));
  EXPECT_FALSE(solve(cnf(1, {{1}, {-1}})).sat);
  EXPECT_TRUE(solve(cnf(1, {{1, -1}})).sat);
  EXPECT_TRUE(solve(cnf(3, {})).sat);
  EXPECT_EQ(solve(cnf(3, {})).shortcut, Shortcut::sat);
  EXPECT_FALSE(solve(cnf(1, {{}})).sat);
}

TEST(SolveTest, BudgetPropagates) {
  SearchOptions options;
  options.budget = 1;
  EXPECT_THROW(solve(cnf(3, {{1, 2, 3}, {-1, -2}, {-3, 2}}), options), ResourceLimit);
}

TEST(SolveProperty, AgreesWithBruteForce) {
  std::mt19937_64 rng(59);
  for (int round = 0; round < 200; ++round) {
    const CnfInstance inst = testing::random_cnf(rng, 5, 8, 1, 3);
    const SolveResult r = solve(inst);
    EXPECT_EQ(r.sat, oracles::brute_force_sat(inst).has_value());
    if (r.sat) {
      EXPECT_TRUE(r.assignment->satisfies(inst));
    }
  }
}

TEST(SolveProperty, Deterministic) {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 30; ++round) {
    const CnfInstance inst = testing::random_cnf(rng, 4, 6, 1, 3);
    const SolveResult a = solve(inst), b = solve(inst);
    EXPECT_EQ(a.sat, b.sat);
    if (a.sat) {
      EXPECT_EQ(a.assignment->value, b.assignment->value);
    }
  }
}

}  // namespace
}  // namespace pomset
