#include "pomset/graph_text.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "pomset/text_util.hpp"

namespace pomset {

RawGraph parse_graph_text(std::string_view text) {
  RawGraph raw;
  std::set<std::string, std::less<>> declared;
  auto declare = [&](const std::string& name) {
    if (declared.insert(name).second) raw.vertices.push_back(name);
  };

  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto tokens = detail::tokenize(detail::strip_comment(line, '#'));
    if (tokens.empty()) continue;
    const auto& head = tokens.front();
    if (head.text == "v") {
      if (tokens.size() != 2) {
        throw ParseError("expected `v <name>`", line_no, head.column);
      }
      const std::string name(tokens[1].text);
      if (declared.contains(name)) {
        raw.vertices.push_back(name);  // duplicate, reported by validate
      } else {
        declare(name);
      }
      continue;
    }
    if (head.text != "m" && head.text != "a" && head.text != "e") {
      throw ParseError("unknown declaration `" + std::string(head.text) + "`",
                       line_no, head.column);
    }
    if (tokens.size() != 3) {
      throw ParseError("expected `" + std::string(head.text) + " <u> <v>`",
                       line_no, head.column);
    }
    const std::string u(tokens[1].text), v(tokens[2].text);
    declare(u);
    declare(v);
    raw.arcs.emplace_back(u, v);
    if (head.text == "m") {
      raw.arcs.emplace_back(v, u);
      raw.matching.emplace_back(u, v);
      raw.matching.emplace_back(v, u);
    } else if (head.text == "e") {
      raw.arcs.emplace_back(v, u);
    }
  }
  return raw;
}

MatchedDigraph read_graph(std::string_view text) {
  return validate(parse_graph_text(text));
}

std::string write_graph(const MatchedDigraph& g) {
  std::ostringstream out;
  for (Vertex v = 0; v < g.size(); ++v) out << "v " << g.name(v) << '\n';
  for (const auto& [u, v] : g.matching_pairs()) {
    out << "m " << g.name(u) << ' ' << g.name(v) << '\n';
  }
  const auto arcs = g.nonmatching_arcs();
  for (const Arc& a : arcs) {
    if (a.from < a.to && g.has_nonmatching_arc(a.to, a.from)) {
      out << "e " << g.name(a.from) << ' ' << g.name(a.to) << '\n';
    }
  }
  for (const Arc& a : arcs) {
    if (!g.has_nonmatching_arc(a.to, a.from)) {
      out << "a " << g.name(a.from) << ' ' << g.name(a.to) << '\n';
    }
  }
  return out.str();
}

namespace {

std::string quoted(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const MatchedDigraph& g, const AltCircuitWitness* witness) {
  // Witness steps replace the plain rendering of the edge they traverse.
  std::set<Arc> highlighted_matching, highlighted_plain;
  if (witness) {
    const auto& seq = witness->circuit.seq;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Arc step{seq[i], seq[(i + 1) % seq.size()]};
      const bool matching = i < witness->matching_step.size()
                                ? bool(witness->matching_step[i])
                                : g.has_matching_arc(step.from, step.to);
      (matching ? highlighted_matching : highlighted_plain).insert(step);
    }
  }
  auto touches = [](const std::set<Arc>& s, Vertex u, Vertex v) {
    return s.contains({u, v}) || s.contains({v, u});
  };

  std::ostringstream out;
  out << "digraph rb {\n";
  for (Vertex v = 0; v < g.size(); ++v) out << "  " << quoted(g.name(v)) << ";\n";
  for (const auto& [u, v] : g.matching_pairs()) {
    if (touches(highlighted_matching, u, v)) continue;
    out << "  " << quoted(g.name(u)) << " -> " << quoted(g.name(v))
        << " [dir=none, style=bold];\n";
  }
  for (const Arc& a : g.nonmatching_arcs()) {
    const bool symmetric = g.has_nonmatching_arc(a.to, a.from);
    if (symmetric && !touches(highlighted_plain, a.from, a.to)) {
      if (a.from > a.to) continue;
      out << "  " << quoted(g.name(a.from)) << " -> " << quoted(g.name(a.to))
          << " [dir=none];\n";
    } else {
      if (highlighted_plain.contains(a)) continue;
      out << "  " << quoted(g.name(a.from)) << " -> " << quoted(g.name(a.to))
          << ";\n";
    }
  }
  if (witness) {
    const auto& seq = witness->circuit.seq;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Arc step{seq[i], seq[(i + 1) % seq.size()]};
      const bool matching = highlighted_matching.contains(step);
      out << "  " << quoted(g.name(step.from)) << " -> "
          << quoted(g.name(step.to)) << " [color=red, penwidth=2"
          << (matching ? ", style=bold" : "") << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace pomset
