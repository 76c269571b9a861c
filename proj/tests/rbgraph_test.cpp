#include "pomset/rbgraph.hpp"

#include <gtest/gtest.h>

#include <random>

#include "pomset/oracles.hpp"
#include "test_support.hpp"

namespace pomset {
namespace {

using testing::figure1;

Circuit named(const MatchedDigraph& g, std::vector<std::string> names) {
  Circuit c;
  for (const auto& n : names) c.seq.push_back(*g.find(n));
  return c;
}

// u,v and w,x matched; undirected cross edges {v,w} and {x,u}.
MatchedDigraph undirected_square() {
  return read_graph("m u v\nm w x\ne v w\ne x u\n");
}

MatchedDigraph directed_square() {
  return read_graph("m u v\nm w x\na v w\na x u\n");
}

TEST(ValidateTest, AcceptsFigure1) {
  const MatchedDigraph g = figure1();
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.matching_pairs().size(), 2u);
  // w->x and y->z one way, x--y both ways.
  EXPECT_EQ(g.nonmatching_arc_count(), 4u);
  EXPECT_TRUE(g.has_nonmatching_arc(*g.find("w"), *g.find("x")));
  EXPECT_FALSE(g.has_nonmatching_arc(*g.find("x"), *g.find("w")));
}

TEST(ValidateTest, AcceptsSingleMatchedPair) {
  RawGraph raw{{"u", "v"}, {{"u", "v"}, {"v", "u"}}, {{"u", "v"}, {"v", "u"}}};
  const MatchedDigraph g = validate(raw);
  EXPECT_EQ(g.mate(0), 1u);
  EXPECT_EQ(g.nonmatching_arc_count(), 0u);
}

TEST(ValidateTest, AcceptsEmptyGraph) {
  const MatchedDigraph g = validate(RawGraph{});
  EXPECT_TRUE(g.empty());
  EXPECT_FALSE(find_alternating_circuit(g));
}

TEST(ValidateTest, OddVertexLeftUnmatched) {
  RawGraph raw{{"u", "v", "w"}, {{"u", "v"}, {"v", "u"}}, {{"u", "v"}, {"v", "u"}}};
  try {
    validate(raw);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].kind, Violation::Kind::vertex_not_perfectly_matched);
    EXPECT_EQ(e.violations()[0].u, "w");
  }
}

TEST(ValidateTest, ReportsEveryViolation) {
  RawGraph raw;
  raw.vertices = {"a", "b", "c", "d"};
  raw.arcs = {{"a", "a"}, {"a", "b"}, {"b", "a"}, {"c", "d"}};
  raw.matching = {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}};
  try {
    validate(raw);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    std::vector<Violation::Kind> kinds;
    for (const auto& v : e.violations()) kinds.push_back(v.kind);
    using K = Violation::Kind;
    // a->a self-loop; (d,c) matched but not an arc.
    EXPECT_EQ(kinds, (std::vector<K>{K::self_loop, K::matching_not_subset_of_arcs}));
  }
}

TEST(ValidateTest, AsymmetricMatching) {
  RawGraph raw{{"u", "v"}, {{"u", "v"}, {"v", "u"}}, {{"u", "v"}}};
  try {
    validate(raw);
    FAIL();
  } catch (const ValidationError& e) {
    using K = Violation::Kind;
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0], (Violation{K::matching_not_symmetric, "u", "v"}));
  }
}

TEST(ValidateTest, UnknownAndDuplicateVertices) {
  RawGraph raw{{"u", "u"}, {{"u", "q"}}, {}};
  try {
    validate(raw);
    FAIL();
  } catch (const ValidationError& e) {
    using K = Violation::Kind;
    EXPECT_EQ(e.violations()[0].kind, K::duplicate_vertex);
    EXPECT_EQ(e.violations()[1], (Violation{K::unknown_vertex, "q", ""}));
  }
}

TEST(IsAlternatingCircuitTest, UndirectedSquare) {
  const MatchedDigraph g = undirected_square();
  EXPECT_TRUE(is_alternating_circuit(g, named(g, {"u", "v", "w", "x"})));
  // Same cycle, other rotation and the reverse direction.
  EXPECT_TRUE(is_alternating_circuit(g, named(g, {"v", "w", "x", "u"})));
  EXPECT_TRUE(is_alternating_circuit(g, named(g, {"x", "w", "v", "u"})));
}

TEST(IsAlternatingCircuitTest, OddLengthRejected) {
  const MatchedDigraph g = undirected_square();
  EXPECT_FALSE(is_alternating_circuit(g, named(g, {"u", "v", "w"})));
}

TEST(IsAlternatingCircuitTest, Figure1NonCircuit) {
  const MatchedDigraph g = figure1();
  EXPECT_FALSE(is_alternating_circuit(g, named(g, {"w", "x", "z", "y"})));
}

TEST(IsAlternatingCircuitTest, MalformedSequences) {
  const MatchedDigraph g = undirected_square();
  EXPECT_FALSE(is_alternating_circuit(g, Circuit{}));
  EXPECT_FALSE(is_alternating_circuit(g, Circuit{{0}}));
  EXPECT_FALSE(is_alternating_circuit(g, Circuit{{0, 1, 0, 1}}));
  EXPECT_FALSE(is_alternating_circuit(g, Circuit{{0, 1, 2, 99}}));
  // Two matching steps in a row at the wrap-around.
  EXPECT_FALSE(is_alternating_circuit(g, named(g, {"u", "v"})));
}

TEST(FindAlternatingCircuitTest, Figure1HasNone) {
  EXPECT_FALSE(find_alternating_circuit(figure1()));
}

TEST(FindAlternatingCircuitTest, LonePairHasNone) {
  EXPECT_FALSE(find_alternating_circuit(read_graph("m u v\n")));
}

TEST(FindAlternatingCircuitTest, DirectedSquareWitness) {
  const MatchedDigraph g = directed_square();
  const auto w = find_alternating_circuit(g);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->circuit, named(g, {"u", "v", "w", "x"}));
  EXPECT_EQ(w->matching_step, (std::vector<bool>{true, false, true, false}));
  EXPECT_TRUE(is_valid_witness(g, *w));
  // The oracle confirms it is the only one.
  const auto all = oracles::enumerate_alternating_circuits(g);
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0].circuit, w->circuit);
}

TEST(FindAlternatingCircuitTest, PreferredStartRotatesWitness) {
  const MatchedDigraph g = directed_square();
  SearchOptions options;
  options.preferred_starts = {*g.find("w")};
  const auto w = find_alternating_circuit(g, options);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->circuit, named(g, {"w", "x", "u", "v"}));
}

TEST(FindAlternatingCircuitTest, BudgetExhaustion) {
  SearchOptions options;
  options.budget = 0;
  EXPECT_THROW(find_alternating_circuit(directed_square(), options), ResourceLimit);
  options.budget = 100;
  EXPECT_TRUE(find_alternating_circuit(directed_square(), options));
}

TEST(FindAlternatingCircuitTest, ParallelArcGivesLengthTwoCircuit) {
  const std::vector<std::pair<Vertex, Vertex>> pairs = {{0, 1}};
  const std::vector<Arc> arcs = {{1, 0}};
  const MatchedDigraph g = MatchedDigraph::assemble({"p", "q"}, pairs, arcs);
  const auto w = find_alternating_circuit(g);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->circuit.seq, (std::vector<Vertex>{0, 1}));
  EXPECT_TRUE(is_valid_witness(g, *w));
}

TEST(FindAlternatingCircuitTest, InvalidWitnessLabelsRejected) {
  const MatchedDigraph g = directed_square();
  auto w = *find_alternating_circuit(g);
  w.matching_step.flip();
  EXPECT_FALSE(is_valid_witness(g, w));
}

// Exhaustive over every 4-vertex matched digraph: soundness, even length and
// agreement with brute-force enumeration.
TEST(FindAlternatingCircuitProperty, ExhaustiveFourVertices) {
  for (const auto& pairs : testing::four_vertex_matchings()) {
    for (unsigned mask = 0; mask < (1u << 12); ++mask) {
      const MatchedDigraph g = testing::four_vertex_graph(pairs, mask);
      const auto w = find_alternating_circuit(g);
      const auto all = oracles::enumerate_alternating_circuits(g);
      ASSERT_EQ(w.has_value(), !all.empty()) << write_graph(g);
      if (w) {
        EXPECT_TRUE(is_valid_witness(g, *w));
        EXPECT_EQ(w->circuit.length() % 2, 0u);
      }
      // Reversal symmetry.
      const auto rev = find_alternating_circuit(reversed(g));
      ASSERT_EQ(rev.has_value(), w.has_value()) << write_graph(g);
      if (w) {
        Circuit back{{w->circuit.seq.rbegin(), w->circuit.seq.rend()}};
        EXPECT_TRUE(is_alternating_circuit(reversed(g), back));
      }
    }
  }
}

TEST(FindAlternatingCircuitProperty, RandomSixAndEightVertices) {
  std::mt19937_64 rng(20240601);
  for (int round = 0; round < 400; ++round) {
    const std::size_t pairs = 3 + round % 2;
    const double density = 0.15 + 0.05 * (round % 6);
    const MatchedDigraph g = testing::random_matched_digraph(rng, pairs, density);
    const auto w = find_alternating_circuit(g);
    const auto all = oracles::enumerate_alternating_circuits(g);
    ASSERT_EQ(w.has_value(), !all.empty()) << write_graph(g);
    if (w) {
      EXPECT_TRUE(is_valid_witness(g, *w));
      // The canonical rotation of the witness is among the enumerated ones.
      auto seq = w->circuit.seq;
      std::rotate(seq.begin(), std::min_element(seq.begin(), seq.end()), seq.end());
      EXPECT_TRUE(std::any_of(all.begin(), all.end(),
                              [&](const auto& c) { return c.circuit.seq == seq; }));
    }
    EXPECT_EQ(find_alternating_circuit(reversed(g)).has_value(), w.has_value());
  }
}

TEST(FindAlternatingCircuitProperty, Deterministic) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const MatchedDigraph g = testing::random_matched_digraph(rng, 5, 0.2);
    EXPECT_EQ(find_alternating_circuit(g), find_alternating_circuit(g));
  }
}

TEST(InducedTest, KeepsArcsInsideSelection) {
  const MatchedDigraph g = figure1();
  std::vector<bool> keep(4, false);
  keep[*g.find("x")] = keep[*g.find("z")] = true;
  const MatchedDigraph sub = induced(g, keep);
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.name(0), "x");
  EXPECT_EQ(sub.nonmatching_arc_count(), 0u);
}

}  // namespace
}  // namespace pomset
