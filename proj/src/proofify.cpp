#include "pomset/proofify.hpp"

#include <algorithm>
#include <sstream>

namespace pomset {

IsolatedMatchedPair::IsolatedMatchedPair(std::string u, std::string v)
    : Error("IsolatedMatchedPair(" + u + "," + v +
            "): a vertex of this pair has no non-matching arc"),
      u_(std::move(u)),
      v_(std::move(v)) {}

namespace {

bool isolated(const MatchedDigraph& g, Vertex v) {
  return g.successors(v).empty() && g.predecessors(v).empty();
}

// One endpoint of a classified edge, as seen from `vertex`.
struct Port {
  int edge_class;  // 0 undirected, 1 directed-only
  Vertex from;
  Vertex to;
  std::string atom;
  bool dual;

  auto key() const { return std::tie(edge_class, from, to); }
};

struct Builder {
  const MatchedDigraph& g;
  ProofifyOutput& out;
  std::vector<std::vector<Port>> ports;
  std::map<std::pair<Vertex, std::string>, Address> port_address;

  Formula bundle(Vertex v, std::size_t count, std::size_t conclusion,
                 const std::string& path) {
    const auto& list = ports[v];
    if (count == 1) {
      const Port& p = list[0];
      return place_port(v, p, conclusion, path);
    }
    Formula left = bundle(v, count - 1, conclusion, path + 'L');
    Formula right = place_port(v, list[count - 1], conclusion, path + 'R');
    out.map.entries[{conclusion, path}] = {ProofifyMap::Role::bundle, v, v};
    return Formula::par(std::move(left), std::move(right));
  }

  Formula place_port(Vertex v, const Port& p, std::size_t conclusion,
                     const std::string& path) {
    const Address a{conclusion, path};
    const Vertex far = p.from == v ? p.to : p.from;
    out.map.entries[a] = {ProofifyMap::Role::port, v, far};
    port_address[{v, p.atom}] = a;
    return Formula::atom(p.atom, p.dual);
  }
};

}  // namespace

EdgeClassification classify(const MatchedDigraph& g) {
  EdgeClassification c;
  c.matching = g.matching_pairs();
  for (const auto& [u, v] : c.matching) {
    if (isolated(g, u) || isolated(g, v)) {
      throw IsolatedMatchedPair(g.name(u), g.name(v));
    }
  }
  for (const Arc& a : g.nonmatching_arcs()) {
    if (g.has_nonmatching_arc(a.to, a.from)) {
      if (a.from < a.to) c.undirected.emplace_back(a.from, a.to);
    } else {
      c.directed.push_back(a);
    }
  }
  return c;
}

MatchedDigraph drop_isolated(const MatchedDigraph& g) {
  MatchedDigraph current = g;
  while (true) {
    std::vector<bool> keep(current.size(), true);
    bool changed = false;
    for (Vertex v = 0; v < current.size(); ++v) {
      if (isolated(current, v)) {
        keep[v] = keep[current.mate(v)] = false;
        changed = true;
      }
    }
    if (!changed) return current;
    current = induced(current, keep);
  }
}

std::optional<Vertex> ProofifyMap::owner(const Address& a) const {
  auto it = entries.find(a);
  if (it == entries.end()) return std::nullopt;
  if (it->second.role == Role::port || it->second.role == Role::bundle) {
    return it->second.vertex;
  }
  return std::nullopt;
}

ProofifyOutput proofify(const MatchedDigraph& g) {
  const EdgeClassification edges = classify(g);

  ProofifyOutput out{g, {}, {}};
  Builder b{g, out, std::vector<std::vector<Port>>(g.size()), {}};

  for (std::size_t k = 0; k < edges.undirected.size(); ++k) {
    const auto [u, v] = edges.undirected[k];
    const std::string atom = "e" + std::to_string(k + 1);
    b.ports[u].push_back({0, u, v, atom, false});
    b.ports[v].push_back({0, u, v, atom, true});
  }
  for (std::size_t k = 0; k < edges.directed.size(); ++k) {
    const Arc a = edges.directed[k];
    const std::string stem = "d" + std::to_string(k + 1);
    b.ports[a.from].push_back({1, a.from, a.to, stem + "_1", false});
    b.ports[a.to].push_back({1, a.from, a.to, stem + "_2", true});
  }
  for (auto& list : b.ports) {
    std::sort(list.begin(), list.end(),
              [](const Port& x, const Port& y) { return x.key() < y.key(); });
  }

  std::vector<Formula> conclusions;
  std::vector<ProofStructure::Axiom> axioms;
  for (const auto& [u, v] : edges.matching) {
    const std::size_t c = conclusions.size();
    Formula left = b.bundle(u, b.ports[u].size(), c, "L");
    Formula right = b.bundle(v, b.ports[v].size(), c, "R");
    out.map.entries[{c, ""}] = {ProofifyMap::Role::tensor, u, v};
    conclusions.push_back(Formula::tensor(std::move(left), std::move(right)));
  }
  for (std::size_t k = 0; k < edges.undirected.size(); ++k) {
    const auto [u, v] = edges.undirected[k];
    const std::string atom = "e" + std::to_string(k + 1);
    axioms.emplace_back(b.port_address.at({u, atom}),
                        b.port_address.at({v, atom}));
  }
  for (std::size_t k = 0; k < edges.directed.size(); ++k) {
    const Arc a = edges.directed[k];
    const std::string stem = "d" + std::to_string(k + 1);
    const std::size_t c = conclusions.size();
    const Address lambda{c, "L"}, rho{c, "R"};
    conclusions.push_back(Formula::before(Formula::atom(stem + "_1", true),
                                          Formula::atom(stem + "_2", false)));
    out.map.entries[{c, ""}] = {ProofifyMap::Role::gadget, a.from, a.to};
    out.map.entries[lambda] = {ProofifyMap::Role::gadget_atom, a.from, a.to};
    out.map.entries[rho] = {ProofifyMap::Role::gadget_atom, a.from, a.to};
    axioms.emplace_back(b.port_address.at({a.from, stem + "_1"}), lambda);
    axioms.emplace_back(rho, b.port_address.at({a.to, stem + "_2"}));
  }
  out.structure = ProofStructure::make(std::move(conclusions), std::move(axioms));
  return out;
}

Circuit lift_witness(const ProofifyOutput& out, const AltCircuitWitness& w) {
  const RbTranslation rb = to_rb(out.structure);
  if (!is_valid_witness(rb.graph, w)) {
    throw MalformedWitness(
        "witness is not an alternating circuit of the translated structure");
  }
  Circuit lifted;
  for (Vertex v : w.circuit.seq) {
    const auto owner = out.map.owner(rb.origin.at(v).formula);
    if (!owner) continue;
    if (!lifted.seq.empty() && lifted.seq.back() == *owner) continue;
    lifted.seq.push_back(*owner);
  }
  while (lifted.seq.size() > 1 && lifted.seq.front() == lifted.seq.back()) {
    lifted.seq.pop_back();
  }
  if (!is_alternating_circuit(out.source, lifted)) {
    throw Error("lifted witness is not an alternating circuit of the source");
  }
  return lifted;
}

std::string write_map(const ProofifyOutput& out) {
  static constexpr const char* kRole[] = {"port", "bundle", "tensor",
                                          "gadget-atom", "gadget"};
  std::ostringstream s;
  for (const auto& [address, e] : out.map.entries) {
    s << to_string(address) << ' ' << kRole[static_cast<int>(e.role)] << ' '
      << out.source.name(e.vertex);
    if (e.role != ProofifyMap::Role::bundle) s << ' ' << out.source.name(e.other);
    s << '\n';
  }
  return s.str();
}

}  // namespace pomset
