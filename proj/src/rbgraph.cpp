#include "pomset/rbgraph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pomset {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out = "invalid matched digraph:";
  for (const auto& v : violations) {
    out += "\n  ";
    out += v.describe();
  }
  return out;
}

bool sorted_contains(std::span<const Vertex> range, Vertex v) {
  return std::binary_search(range.begin(), range.end(), v);
}

}  // namespace

std::string Violation::describe() const {
  switch (kind) {
    case Kind::duplicate_vertex:
      return "DuplicateVertex(" + u + ")";
    case Kind::unknown_vertex:
      return "UnknownVertex(" + u + ")";
    case Kind::self_loop:
      return "SelfLoop(" + u + ")";
    case Kind::matching_not_subset_of_arcs:
      return "MatchingNotSubsetOfArcs(" + u + "," + v + ")";
    case Kind::vertex_not_perfectly_matched:
      return "VertexNotPerfectlyMatched(" + u + ")";
    case Kind::matching_not_symmetric:
      return "MatchingNotSymmetric(" + u + "," + v + ")";
  }
  return "?";
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ResourceLimit::ResourceLimit(std::uint64_t budget)
    : Error("search budget of " + std::to_string(budget) +
            " node expansions exceeded"),
      budget_(budget) {}

MatchedDigraph MatchedDigraph::assemble(
    std::vector<std::string> names,
    std::span<const std::pair<Vertex, Vertex>> matching_pairs,
    std::span<const Arc> nonmatching) {
  const auto n = static_cast<Vertex>(names.size());
  std::vector<Violation> violations;
  auto label = [&](Vertex v) {
    return v < n ? names[v] : "#" + std::to_string(v);
  };

  constexpr Vertex kUnmatched = static_cast<Vertex>(-1);
  std::vector<Vertex> mate(n, kUnmatched);
  for (const auto& [u, v] : matching_pairs) {
    if (u >= n || v >= n) {
      violations.push_back({Violation::Kind::unknown_vertex, label(u >= n ? u : v), {}});
      continue;
    }
    if (u == v) {
      violations.push_back({Violation::Kind::self_loop, label(u), {}});
      continue;
    }
    for (Vertex w : {u, v}) {
      const Vertex other = w == u ? v : u;
      if (mate[w] != kUnmatched && mate[w] != other) {
        violations.push_back(
            {Violation::Kind::vertex_not_perfectly_matched, label(w), {}});
      }
      mate[w] = other;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (mate[v] == kUnmatched) {
      violations.push_back(
          {Violation::Kind::vertex_not_perfectly_matched, label(v), {}});
    }
  }

  std::vector<std::vector<Vertex>> out(n), in(n);
  for (const Arc& a : nonmatching) {
    if (a.from >= n || a.to >= n) {
      violations.push_back(
          {Violation::Kind::unknown_vertex, label(a.from >= n ? a.from : a.to), {}});
      continue;
    }
    if (a.from == a.to) {
      violations.push_back({Violation::Kind::self_loop, label(a.from), {}});
      continue;
    }
    out[a.from].push_back(a.to);
    in[a.to].push_back(a.from);
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  MatchedDigraph g;
  std::size_t count = 0;
  for (Vertex v = 0; v < n; ++v) {
    for (auto* list : {&out[v], &in[v]}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
    }
    count += out[v].size();
  }
  g.names_ = std::move(names);
  g.mate_ = std::move(mate);
  g.out_ = std::move(out);
  g.in_ = std::move(in);
  g.arc_count_ = count;
  return g;
}

std::optional<Vertex> MatchedDigraph::find(std::string_view name) const {
  for (Vertex v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return v;
  }
  return std::nullopt;
}

bool MatchedDigraph::has_matching_arc(Vertex u, Vertex v) const {
  return u < size() && v < size() && u != v && mate_[u] == v;
}

bool MatchedDigraph::has_nonmatching_arc(Vertex u, Vertex v) const {
  return u < size() && v < size() && sorted_contains(out_[u], v);
}

std::vector<Arc> MatchedDigraph::nonmatching_arcs() const {
  std::vector<Arc> arcs;
  arcs.reserve(arc_count_);
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : out_[u]) arcs.push_back({u, v});
  }
  return arcs;
}

std::vector<std::pair<Vertex, Vertex>> MatchedDigraph::matching_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < size(); ++u) {
    if (u < mate_[u]) pairs.emplace_back(u, mate_[u]);
  }
  return pairs;
}

MatchedDigraph validate(const RawGraph& raw) {
  std::vector<Violation> violations;
  std::map<std::string, Vertex, std::less<>> index;
  for (const auto& name : raw.vertices) {
    if (!index.emplace(name, static_cast<Vertex>(index.size())).second) {
      violations.push_back({Violation::Kind::duplicate_vertex, name, {}});
    }
  }
  auto lookup = [&](const std::string& name) -> std::optional<Vertex> {
    auto it = index.find(name);
    if (it == index.end()) {
      violations.push_back({Violation::Kind::unknown_vertex, name, {}});
      return std::nullopt;
    }
    return it->second;
  };

  std::set<Arc> arcs;
  for (const auto& [u, v] : raw.arcs) {
    if (u == v) {
      violations.push_back({Violation::Kind::self_loop, u, {}});
      continue;
    }
    auto a = lookup(u), b = lookup(v);
    if (a && b) arcs.insert({*a, *b});
  }

  std::set<Arc> matching;
  for (const auto& [u, v] : raw.matching) {
    if (u == v) {
      violations.push_back({Violation::Kind::self_loop, u, {}});
      continue;
    }
    auto a = lookup(u), b = lookup(v);
    if (!a || !b) continue;
    if (!arcs.contains({*a, *b})) {
      violations.push_back({Violation::Kind::matching_not_subset_of_arcs, u, v});
    }
    matching.insert({*a, *b});
  }

  const auto n = static_cast<Vertex>(raw.vertices.size());
  std::vector<int> out_degree(n, 0), in_degree(n, 0);
  for (const Arc& a : matching) {
    ++out_degree[a.from];
    ++in_degree[a.to];
    if (!matching.contains({a.to, a.from})) {
      violations.push_back({Violation::Kind::matching_not_symmetric,
                            raw.vertices[a.from], raw.vertices[a.to]});
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (out_degree[v] != 1 || in_degree[v] != 1) {
      violations.push_back({Violation::Kind::vertex_not_perfectly_matched,
                            raw.vertices[v], {}});
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));

  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const Arc& a : matching) {
    if (a.from < a.to) pairs.emplace_back(a.from, a.to);
  }
  std::vector<Arc> rest;
  for (const Arc& a : arcs) {
    if (!matching.contains(a)) rest.push_back(a);
  }
  return MatchedDigraph::assemble(raw.vertices, pairs, rest);
}

Vertex Circuit::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(seq.size());
  return seq[static_cast<std::size_t>(((i % n) + n) % n)];
}

bool is_alternating_circuit(const MatchedDigraph& g, const Circuit& c) {
  const std::size_t n = c.length();
  if (n < 2 || n % 2 != 0) return false;
  std::vector<bool> seen(g.size(), false);
  for (Vertex v : c.seq) {
    if (v >= g.size() || seen[v]) return false;
    seen[v] = true;
  }
  // Alternation at every index means the step labels follow one of the two
  // parities around the whole (even-length) cycle.
  for (std::size_t parity = 0; parity < 2; ++parity) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const Vertex u = c.seq[i];
      const Vertex v = c.seq[(i + 1) % n];
      ok = (i % 2 == parity) ? g.has_matching_arc(u, v)
                             : g.has_nonmatching_arc(u, v);
    }
    if (ok) return true;
  }
  return false;
}

bool is_valid_witness(const MatchedDigraph& g, const AltCircuitWitness& w) {
  const std::size_t n = w.circuit.length();
  if (w.matching_step.size() != n) return false;
  if (!is_alternating_circuit(g, w.circuit)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (w.matching_step[i] == w.matching_step[(i + 1) % n]) return false;
    const Vertex u = w.circuit.seq[i];
    const Vertex v = w.circuit.seq[(i + 1) % n];
    const bool ok = w.matching_step[i] ? g.has_matching_arc(u, v)
                                       : g.has_nonmatching_arc(u, v);
    if (!ok) return false;
  }
  return true;
}

namespace {

// Every alternating circuit is a cycle in the "state graph" whose nodes are
// vertices v (meaning: take the matching arc v -> mate(v) next) and whose
// edges are v => w for each non-matching arc mate(v) -> w. States whose
// matching arc is banned have no outgoing edges.
class AlternatingSearch {
 public:
  AlternatingSearch(const MatchedDigraph& g, const SearchOptions& options)
      : g_(g),
        budget_(options.budget),
        banned_(g.size(), false),
        visited_(g.size(), false),
        component_(g.size(), 0) {}

  std::optional<AltCircuitWitness> run(std::span<const Vertex> order) {
    for (Vertex start : order) {
      compute_components();
      if (!on_state_cycle_[start]) {
        banned_[start] = true;
        continue;
      }
      start_ = start;
      path_.clear();
      path_.push_back(start);
      mark(start, true);
      const bool found = extend(start);
      mark(start, false);
      if (found) return witness();
      // No circuit uses the arc start -> mate(start).
      banned_[start] = true;
    }
    return std::nullopt;
  }

 private:
  void mark(Vertex v, bool value) {
    visited_[v] = value;
    visited_[g_.mate(v)] = value;
  }

  bool extend(Vertex state) {
    if (budget_ && ++expansions_ > *budget_) throw ResourceLimit(*budget_);
    for (Vertex next : g_.successors(g_.mate(state))) {
      if (next == start_) return true;
      if (banned_[next] || visited_[next] || visited_[g_.mate(next)]) continue;
      if (component_[next] != component_[start_]) continue;
      path_.push_back(next);
      mark(next, true);
      const bool found = extend(next);
      mark(next, false);
      if (found) return true;
      path_.pop_back();
    }
    return false;
  }

  AltCircuitWitness witness() const {
    AltCircuitWitness w;
    for (Vertex state : path_) {
      w.circuit.seq.push_back(state);
      w.circuit.seq.push_back(g_.mate(state));
      w.matching_step.push_back(true);
      w.matching_step.push_back(false);
    }
    return w;
  }

  // Tarjan SCC over the state graph, iterative. Also records which states lie
  // on some cycle (non-trivial component or a self-edge).
  void compute_components() {
    const auto n = static_cast<Vertex>(g_.size());
    constexpr Vertex kNone = static_cast<Vertex>(-1);
    std::vector<Vertex> index(n, kNone), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    on_state_cycle_.assign(n, false);
    Vertex next_index = 0, next_component = 0;

    auto edges = [&](Vertex v) -> std::span<const Vertex> {
      if (banned_[v]) return {};
      return g_.successors(g_.mate(v));
    };

    struct Frame {
      Vertex v;
      std::size_t edge;
    };
    std::vector<Frame> frames;
    for (Vertex root = 0; root < n; ++root) {
      if (index[root] != kNone) continue;
      frames.push_back({root, 0});
      index[root] = low[root] = next_index++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!frames.empty()) {
        Frame& f = frames.back();
        const auto out = edges(f.v);
        if (f.edge < out.size()) {
          const Vertex w = out[f.edge++];
          if (w == f.v) on_state_cycle_[w] = true;
          if (index[w] == kNone) {
            index[w] = low[w] = next_index++;
            stack.push_back(w);
            on_stack[w] = true;
            frames.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
          continue;
        }
        const Vertex v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        if (low[v] == index[v]) {
          std::vector<Vertex> members;
          Vertex w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            component_[w] = next_component;
            members.push_back(w);
          } while (w != v);
          if (members.size() > 1) {
            for (Vertex m : members) on_state_cycle_[m] = true;
          }
          ++next_component;
        }
      }
    }
  }

  const MatchedDigraph& g_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t expansions_ = 0;
  std::vector<bool> banned_;
  std::vector<bool> visited_;
  std::vector<Vertex> component_;
  std::vector<bool> on_state_cycle_;
  std::vector<Vertex> path_;
  Vertex start_ = 0;
};

}  // namespace

std::optional<AltCircuitWitness> find_alternating_circuit(
    const MatchedDigraph& g, const SearchOptions& options) {
  std::vector<Vertex> order;
  std::vector<bool> queued(g.size(), false);
  for (Vertex v : options.preferred_starts) {
    if (v < g.size() && !queued[v]) {
      order.push_back(v);
      queued[v] = true;
    }
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!queued[v]) order.push_back(v);
  }
  AlternatingSearch search(g, options);
  return search.run(order);
}

MatchedDigraph reversed(const MatchedDigraph& g) {
  std::vector<Arc> arcs;
  for (const Arc& a : g.nonmatching_arcs()) arcs.push_back({a.to, a.from});
  const auto pairs = g.matching_pairs();
  return MatchedDigraph::assemble(g.names(), pairs, arcs);
}

MatchedDigraph induced(const MatchedDigraph& g, const std::vector<bool>& keep) {
  constexpr Vertex kDropped = static_cast<Vertex>(-1);
  std::vector<Vertex> remap(g.size(), kDropped);
  std::vector<std::string> names;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (keep.at(v)) {
      remap[v] = static_cast<Vertex>(names.size());
      names.push_back(g.name(v));
    }
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& [u, v] : g.matching_pairs()) {
    if (remap[u] != kDropped && remap[v] != kDropped) {
      pairs.emplace_back(remap[u], remap[v]);
    }
  }
  std::vector<Arc> arcs;
  for (const Arc& a : g.nonmatching_arcs()) {
    if (remap[a.from] != kDropped && remap[a.to] != kDropped) {
      arcs.push_back({remap[a.from], remap[a.to]});
    }
  }
  return MatchedDigraph::assemble(std::move(names), pairs, arcs);
}

}  // namespace pomset
