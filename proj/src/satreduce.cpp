#include "pomset/satreduce.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

#include "pomset/text_util.hpp"

namespace pomset {

Literal Literal::from_dimacs(std::int64_t value) {
  if (value == 0) throw std::invalid_argument("0 is not a literal");
  return {static_cast<std::uint32_t>(value < 0 ? -value : value), value < 0};
}

std::int64_t Literal::to_dimacs() const {
  return negated ? -static_cast<std::int64_t>(var) : static_cast<std::int64_t>(var);
}

std::vector<std::uint32_t> CnfInstance::used_variables() const {
  std::set<std::uint32_t> vars;
  for (const auto& clause : clauses) {
    for (const auto& l : clause) vars.insert(l.var);
  }
  return {vars.begin(), vars.end()};
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance inst;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  Clause current;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0].text == "c" || tokens[0].text.front() == 'c') continue;
    if (tokens[0].text == "%") break;
    if (tokens[0].text == "p") {
      if (have_header) throw ParseError("duplicate header", line_no, 1);
      if (tokens.size() != 4 || tokens[1].text != "cnf") {
        throw ParseError("expected `p cnf <vars> <clauses>`", line_no, 1);
      }
      for (std::size_t k : {2u, 3u}) {
        std::uint64_t value = 0;
        const auto t = tokens[k].text;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc() || ptr != t.data() + t.size() || value > 0xffffffffu) {
          throw ParseError("bad header count `" + std::string(t) + "`", line_no,
                           tokens[k].column);
        }
        if (k == 2) {
          inst.num_vars = static_cast<std::uint32_t>(value);
        } else {
          declared_clauses = value;
        }
      }
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw ParseError("clause before `p cnf` header", line_no, tokens[0].column);
    }
    for (const auto& tok : tokens) {
      std::int64_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.text.data(),
                                       tok.text.data() + tok.text.size(), value);
      if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError("bad literal `" + std::string(tok.text) + "`", line_no,
                         tok.column);
      }
      if (value == 0) {
        inst.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      const Literal lit = Literal::from_dimacs(value);
      if (lit.var > inst.num_vars) {
        throw ParseError("variable " + std::to_string(lit.var) +
                             " exceeds declared count " +
                             std::to_string(inst.num_vars),
                         line_no, tok.column);
      }
      current.push_back(lit);
    }
  }
  if (!have_header) throw ParseError("missing `p cnf` header", line_no + 1, 1);
  if (!current.empty()) inst.clauses.push_back(std::move(current));
  if (inst.clauses.size() != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                         " clauses, found " + std::to_string(inst.clauses.size()),
                     line_no + 1, 1);
  }
  return inst;
}

bool Assignment::satisfies(const CnfInstance& inst) const {
  return std::all_of(inst.clauses.begin(), inst.clauses.end(),
                     [&](const Clause& c) {
                       return std::any_of(c.begin(), c.end(), [&](const Literal& l) {
                         return satisfies(l);
                       });
                     });
}

std::string Assignment::describe() const {
  std::string out;
  for (std::size_t v = 1; v < value.size(); ++v) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(v) + (value[v] ? "=true" : "=false");
  }
  return out;
}

NormalizedCnf normalize_cnf(const CnfInstance& inst) {
  NormalizedCnf out;
  out.instance = inst;
  if (inst.clauses.empty()) {
    out.shortcut = Shortcut::sat;
    return out;
  }
  for (const auto& c : inst.clauses) {
    if (c.empty()) {
      out.shortcut = Shortcut::unsat;
      return out;
    }
  }
  std::map<std::uint32_t, std::pair<bool, bool>> seen;  // positive, negative
  for (const auto& c : inst.clauses) {
    for (const auto& l : c) (l.negated ? seen[l.var].second : seen[l.var].first) = true;
  }
  for (const auto& [var, polarity] : seen) {
    if (polarity.first && polarity.second) continue;
    out.instance.clauses.push_back({{var, false}, {var, true}});
    out.completed.push_back(var);
  }
  return out;
}

std::string Occurrence::label() const {
  return "v" + std::to_string(clause + 1) + "_" + std::to_string(position + 1);
}

std::vector<Occurrence> occurrences(const CnfInstance& inst) {
  std::vector<Occurrence> out;
  for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
    for (std::size_t j = 0; j < inst.clauses[i].size(); ++j) {
      out.push_back({i, j, inst.clauses[i][j]});
    }
  }
  return out;
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

OccurrenceDag dag_skeleton(const std::vector<Occurrence>& occ,
                           OccurrenceDag::Role role) {
  OccurrenceDag g;
  g.role = role;
  for (const auto& o : occ) g.labels.push_back(o.label());
  return g;
}

void finish(OccurrenceDag& g) {
  std::sort(g.arcs.begin(), g.arcs.end());
  g.arcs.erase(std::unique(g.arcs.begin(), g.arcs.end()), g.arcs.end());
}

// Kahn's algorithm over an arbitrary arc list.
bool acyclic(std::size_t n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<Vertex>> out(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const Arc& a : arcs) {
    if (a.from == a.to) return false;
    out[a.from].push_back(a.to);
    ++indegree[a.to];
  }
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const Vertex v = ready.back();
    ready.pop_back();
    ++removed;
    for (Vertex w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return removed == n;
}

}  // namespace

HypothesisViolation::HypothesisViolation(std::vector<std::string> failures)
    : Error("HypothesisViolation: " + join(failures)),
      failures_(std::move(failures)) {}

MissingPolarity::MissingPolarity(std::uint32_t var)
    : Error("MissingPolarity: variable x" + std::to_string(var) +
            " lacks a positive or a negative occurrence") {}

bool OccurrenceDag::has_arc(Vertex u, Vertex v) const {
  return std::binary_search(arcs.begin(), arcs.end(), Arc{u, v});
}

OccurrenceDag build_gcl(const CnfInstance& normalized) {
  const auto occ = occurrences(normalized);
  OccurrenceDag g = dag_skeleton(occ, OccurrenceDag::Role::clause);
  // First occurrence index of every clause.
  std::vector<Vertex> first(normalized.clauses.size() + 1, 0);
  for (std::size_t i = 0; i < normalized.clauses.size(); ++i) {
    first[i + 1] = first[i] + static_cast<Vertex>(normalized.clauses[i].size());
  }
  const std::size_t n = normalized.clauses.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (Vertex a = first[i]; a < first[i + 1]; ++a) {
      for (Vertex b = first[i + 1]; b < first[i + 2]; ++b) g.arcs.push_back({a, b});
    }
  }
  if (n > 0) {
    for (Vertex a = first[0]; a < first[1]; ++a) g.arcs.push_back({g.s(), a});
    for (Vertex a = first[n - 1]; a < first[n]; ++a) g.arcs.push_back({a, g.t()});
  }
  finish(g);
  return g;
}

OccurrenceDag build_gvar(const CnfInstance& normalized) {
  const auto occ = occurrences(normalized);
  OccurrenceDag g = dag_skeleton(occ, OccurrenceDag::Role::variable);

  // Occurrence indices per literal, in (clause, position) order.
  std::map<Literal, std::vector<Vertex>> by_literal;
  for (Vertex k = 0; k < occ.size(); ++k) by_literal[occ[k].literal].push_back(k);

  const auto vars = normalized.used_variables();
  for (auto var : vars) {
    if (!by_literal.contains({var, false}) || !by_literal.contains({var, true})) {
      throw MissingPolarity(var);
    }
  }
  for (const auto& [lit, list] : by_literal) {
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
      g.arcs.push_back({list[k], list[k + 1]});
    }
  }
  for (std::size_t k = 0; k + 1 < vars.size(); ++k) {
    for (bool neg : {false, true}) {
      for (bool next_neg : {false, true}) {
        g.arcs.push_back({by_literal.at({vars[k], neg}).back(),
                          by_literal.at({vars[k + 1], next_neg}).front()});
      }
    }
  }
  if (!vars.empty()) {
    for (bool neg : {false, true}) {
      g.arcs.push_back({g.t(), by_literal.at({vars.front(), neg}).front()});
      g.arcs.push_back({by_literal.at({vars.back(), neg}).back(), g.s()});
    }
  }
  finish(g);
  return g;
}

bool is_acyclic(const OccurrenceDag& g) { return acyclic(g.size(), g.arcs); }

std::vector<std::string> superimpose_hypothesis_failures(const OccurrenceDag& g1,
                                                         const OccurrenceDag& g2) {
  std::vector<std::string> failures;
  if (g1.inner() != g2.inner()) {
    failures.push_back("G1 and G2 have different vertex sets (" +
                       std::to_string(g1.inner()) + " vs " +
                       std::to_string(g2.inner()) + " inner vertices)");
    return failures;
  }
  for (const auto* g : {&g1, &g2}) {
    const std::string which = g == &g1 ? "G1" : "G2";
    for (const Arc& a : g->arcs) {
      if (a.from >= g->size() || a.to >= g->size()) {
        failures.push_back(which + " has an arc outside its vertex set");
        break;
      }
    }
    if (!failures.empty()) return failures;
    if (!is_acyclic(*g)) failures.push_back(which + " is not acyclic");
  }
  auto any = [](const OccurrenceDag& g, auto pred) {
    return std::any_of(g.arcs.begin(), g.arcs.end(), pred);
  };
  const Vertex s = g1.s(), t = g1.t();
  if (any(g1, [&](const Arc& a) { return a.to == s; })) {
    failures.push_back("s has an incoming arc in G1");
  }
  if (any(g1, [&](const Arc& a) { return a.from == t; })) {
    failures.push_back("t has an outgoing arc in G1");
  }
  if (any(g2, [&](const Arc& a) { return a.to == t; })) {
    failures.push_back("t has an incoming arc in G2");
  }
  if (any(g2, [&](const Arc& a) { return a.from == s; })) {
    failures.push_back("s has an outgoing arc in G2");
  }
  // The construction has no image for an arc between s and t themselves.
  if (g1.has_arc(s, t)) failures.push_back("G1 has the arc (s,t)");
  if (g2.has_arc(t, s)) failures.push_back("G2 has the arc (t,s)");
  return failures;
}

SuperimposedGraph superimpose(const OccurrenceDag& g1, const OccurrenceDag& g2) {
  if (auto failures = superimpose_hypothesis_failures(g1, g2); !failures.empty()) {
    throw HypothesisViolation(std::move(failures));
  }
  using G = SuperimposedGraph;
  using Kind = G::Origin::Kind;
  G out;
  std::vector<std::string> names = {"s1", "s2", "t1", "t2"};
  out.origin = {{Kind::s1, 0}, {Kind::s2, 0}, {Kind::t1, 0}, {Kind::t2, 0}};
  std::vector<std::pair<Vertex, Vertex>> matching = {{G::s1, G::s2}, {G::t1, G::t2}};
  for (Vertex v = 0; v < g1.inner(); ++v) {
    names.push_back(g1.labels[v] + "u");
    names.push_back(g1.labels[v] + "d");
    out.origin.push_back({Kind::up, v});
    out.origin.push_back({Kind::down, v});
    matching.emplace_back(G::up(v), G::down(v));
  }

  const Vertex s = g1.s(), t = g1.t();
  for (const Arc& a : g1.arcs) {
    if (a.from == s) {
      out.layer1.push_back({G::s1, G::up(a.to)});
    } else if (a.to == t) {
      out.layer1.push_back({G::down(a.from), G::t1});
    } else {
      out.layer1.push_back({G::down(a.from), G::up(a.to)});
    }
  }
  for (const Arc& a : g2.arcs) {
    if (a.from == t) {
      out.layer2.push_back({G::t2, G::down(a.to)});
    } else if (a.to == s) {
      out.layer2.push_back({G::up(a.from), G::s2});
    } else {
      out.layer2.push_back({G::up(a.from), G::down(a.to)});
    }
  }
  std::sort(out.layer1.begin(), out.layer1.end());
  std::sort(out.layer2.begin(), out.layer2.end());
  std::vector<Arc> all = out.layer1;
  all.insert(all.end(), out.layer2.begin(), out.layer2.end());
  out.graph = MatchedDigraph::assemble(std::move(names), matching, all);
  return out;
}

bool quotient_acyclic(const MatchedDigraph& g, const std::vector<Arc>& arcs) {
  std::vector<Arc> contracted;
  contracted.reserve(arcs.size());
  auto rep = [&](Vertex v) { return std::min(v, g.mate(v)); };
  for (const Arc& a : arcs) contracted.push_back({rep(a.from), rep(a.to)});
  return acyclic(g.size(), contracted);
}

EncodedCnf encode(const CnfInstance& inst) {
  EncodedCnf enc;
  enc.original = inst;
  enc.normalized = normalize_cnf(inst);
  if (enc.normalized.shortcut != Shortcut::none) return enc;
  enc.occurrences = occurrences(enc.normalized.instance);
  enc.graph = superimpose(build_gcl(enc.normalized.instance),
                          build_gvar(enc.normalized.instance));
  return enc;
}

MatchedDigraph encoded_graph(const EncodedCnf& enc) {
  if (enc.graph) return enc.graph->graph;
  if (enc.normalized.shortcut == Shortcut::unsat) return {};
  using G = SuperimposedGraph;
  const std::vector<std::pair<Vertex, Vertex>> matching = {{G::s1, G::s2},
                                                           {G::t1, G::t2}};
  const std::vector<Arc> arcs = {{G::s1, G::t1}, {G::t2, G::s2}};
  return MatchedDigraph::assemble({"s1", "s2", "t1", "t2"}, matching, arcs);
}

Crossings crossings(const AltCircuitWitness& w) {
  using G = SuperimposedGraph;
  Crossings c;
  const auto& seq = w.circuit.seq;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Vertex u = seq[i], v = seq[(i + 1) % seq.size()];
    if (u == G::t1 && v == G::t2) ++c.t1_t2;
    if (u == G::s2 && v == G::s1) ++c.s2_s1;
  }
  return c;
}

Assignment decode_circuit(const EncodedCnf& enc, const AltCircuitWitness& w) {
  using G = SuperimposedGraph;
  if (!enc.graph || !is_valid_witness(enc.graph->graph, w)) {
    throw MalformedWitness("witness is not an alternating circuit of the encoding");
  }
  const Crossings c = crossings(w);
  if (c.t1_t2 != 1 || c.s2_s1 != 1) {
    throw InternalError("circuit crosses (t1,t2) " + std::to_string(c.t1_t2) +
                        " and (s2,s1) " + std::to_string(c.s2_s1) + " times");
  }
  const auto& seq = w.circuit.seq;
  const std::size_t n = seq.size();
  const auto at_t2 = static_cast<std::size_t>(
      std::find(seq.begin(), seq.end(), G::t2) - seq.begin());

  // Variable side: from t2 up to s2, every inner vertex is a false literal.
  std::map<std::uint32_t, std::pair<bool, bool>> visited;  // positive, negative
  for (std::size_t k = 1; k < n; ++k) {
    const Vertex v = seq[(at_t2 + k) % n];
    if (v == G::s2) break;
    const auto& origin = enc.graph->origin.at(v);
    const Literal lit = enc.occurrences.at(origin.inner).literal;
    (lit.negated ? visited[lit.var].second : visited[lit.var].first) = true;
  }

  Assignment result(enc.original.num_vars);
  for (auto var : enc.normalized.instance.used_variables()) {
    const auto [pos, neg] = visited[var];
    if (pos == neg) {
      throw InternalError("variable path visits " +
                          std::string(pos ? "both polarities" : "no occurrence") +
                          " of x" + std::to_string(var));
    }
    result.value.at(var) = neg;
  }
  if (!result.satisfies(enc.original)) {
    throw InternalError("decoded assignment does not satisfy the instance");
  }
  return result;
}

SolveResult solve(const CnfInstance& inst, const SearchOptions& options) {
  const EncodedCnf enc = encode(inst);
  SolveResult result;
  result.shortcut = enc.normalized.shortcut;
  if (enc.normalized.shortcut == Shortcut::sat) {
    result.sat = true;
    result.assignment = Assignment(inst.num_vars);
    return result;
  }
  if (enc.normalized.shortcut == Shortcut::unsat) return result;

  SearchOptions search = options;
  search.preferred_starts.insert(search.preferred_starts.begin(),
                                 SuperimposedGraph::s2);
  const auto witness = find_alternating_circuit(enc.graph->graph, search);
  if (!witness) return result;
  result.sat = true;
  result.assignment = decode_circuit(enc, *witness);
  return result;
}

}  // namespace pomset
