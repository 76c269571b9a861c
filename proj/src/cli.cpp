#include "pomset/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pomset/graph_text.hpp"
#include "pomset/oracles.hpp"
#include "pomset/proofify.hpp"
#include "pomset/proofnet.hpp"
#include "pomset/satreduce.hpp"

namespace pomset::cli {

namespace {

// Raised for unreadable input files; reported like any other input error.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string input;
  std::optional<std::uint64_t> budget;
  std::string dot_path;
  bool drop_isolated = false;
  bool map = false;
  bool verify_oracle = false;
  bool witness = false;
};

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open `" + path + "`");
  buffer << file.rdbuf();
  return buffer.str();
}

void write_dot(const Options& opt, const MatchedDigraph& g,
               const AltCircuitWitness* witness) {
  if (opt.dot_path.empty()) return;
  std::ofstream file(opt.dot_path, std::ios::binary);
  if (!file) throw InputError("cannot write `" + opt.dot_path + "`");
  file << to_dot(g, witness);
}

SearchOptions search_options(const Options& opt) {
  SearchOptions s;
  s.budget = opt.budget;
  return s;
}

std::string circuit_names(const MatchedDigraph& g, const Circuit& c) {
  std::string out;
  for (Vertex v : c.seq) out += (out.empty() ? "" : " ") + g.name(v);
  return out;
}

int cmd_check(const Options& opt, std::istream& in, std::ostream& out) {
  const ProofStructure ps = parse_structure(slurp(opt.input, in));
  const Verdict verdict = check_correctness(ps, search_options(opt));
  if (!opt.dot_path.empty()) {
    write_dot(opt, to_rb(ps).graph, verdict.witness ? &*verdict.witness : nullptr);
  }
  out << verdict.describe() << '\n';
  return verdict.correct ? kOk : kNegative;
}

int cmd_find_circuit(const Options& opt, std::istream& in, std::ostream& out) {
  const MatchedDigraph g = read_graph(slurp(opt.input, in));
  const auto witness = find_alternating_circuit(g, search_options(opt));
  write_dot(opt, g, witness ? &*witness : nullptr);
  if (!witness) {
    out << "NONE\n";
    return kNegative;
  }
  out << "CIRCUIT " << circuit_names(g, witness->circuit) << '\n';
  return kOk;
}

int cmd_proofify(const Options& opt, std::istream& in, std::ostream& out) {
  MatchedDigraph g = read_graph(slurp(opt.input, in));
  if (opt.drop_isolated) {
    const std::size_t before = g.size();
    g = drop_isolated(g);
    if (g.size() != before) {
      out << "# dropped " << (before - g.size()) / 2
          << " isolated matched pair(s)\n";
    }
  }
  const ProofifyOutput result = proofify(g);
  out << write_structure(result.structure);
  if (opt.map) {
    std::istringstream lines(write_map(result));
    for (std::string line; std::getline(lines, line);) out << "# map " << line << '\n';
  }
  if (!opt.dot_path.empty()) write_dot(opt, to_rb(result.structure).graph, nullptr);
  return kOk;
}

int cmd_to_rb(const Options& opt, std::istream& in, std::ostream& out) {
  const ProofStructure ps = parse_structure(slurp(opt.input, in));
  const RbTranslation rb = to_rb(ps);
  out << write_graph(rb.graph);
  if (opt.map) {
    for (Vertex v = 0; v < rb.graph.size(); ++v) {
      const auto& o = rb.origin[v];
      const Formula& f = ps.at(o.formula);
      out << "# map " << rb.graph.name(v) << ' ' << to_string(o.formula) << ' '
          << (o.end == End::top ? "top" : "bottom") << ' '
          << (f.is_atom() ? to_string(f) : std::string("-")) << '\n';
    }
  }
  write_dot(opt, rb.graph, nullptr);
  return kOk;
}

std::string literal_text(const Literal& l) {
  return (l.negated ? "~x" : "x") + std::to_string(l.var);
}

int cmd_sat_encode(const Options& opt, std::istream& in, std::ostream& out) {
  const CnfInstance inst = parse_dimacs(slurp(opt.input, in));
  const EncodedCnf enc = encode(inst);
  switch (enc.normalized.shortcut) {
    case Shortcut::sat:
      out << "# shortcut: empty formula is satisfiable; emitting a graph with "
             "one alternating circuit\n";
      break;
    case Shortcut::unsat:
      out << "# shortcut: empty clause makes the formula unsatisfiable; "
             "emitting the empty graph\n";
      break;
    case Shortcut::none:
      for (auto var : enc.normalized.completed) {
        out << "# normalization: appended clause (x" << var << " | ~x" << var
            << ") to supply a missing polarity\n";
      }
      break;
  }
  const MatchedDigraph g = encoded_graph(enc);
  out << write_graph(g);
  if (opt.map && enc.graph) {
    for (const auto& o : enc.occurrences) {
      out << "# map " << o.label() << ' ' << literal_text(o.literal) << " clause "
          << o.clause + 1 << " position " << o.position + 1 << '\n';
    }
  }
  write_dot(opt, g, nullptr);
  return kOk;
}

int cmd_sat_solve(const Options& opt, std::istream& in, std::ostream& out) {
  const CnfInstance inst = parse_dimacs(slurp(opt.input, in));
  const SolveResult result = solve(inst, search_options(opt));
  if (result.sat) {
    out << "SAT";
    const std::string values = result.assignment->describe();
    if (!values.empty()) out << ' ' << values;
    out << '\n';
  } else {
    out << "UNSAT\n";
  }
  if (opt.verify_oracle) {
    const bool oracle_sat = oracles::brute_force_sat(inst).has_value();
    if (oracle_sat != result.sat) {
      out << "# oracle: DISAGREES (brute force says "
          << (oracle_sat ? "SAT" : "UNSAT") << ")\n";
      return kFailure;
    }
    out << "# oracle: agrees (brute force " << (oracle_sat ? "SAT" : "UNSAT")
        << ")\n";
  }
  if (!opt.dot_path.empty()) write_dot(opt, encoded_graph(encode(inst)), nullptr);
  return result.sat ? kOk : kNegative;
}

int cmd_dot(const Options& opt, std::istream& in, std::ostream& out) {
  const MatchedDigraph g = read_graph(slurp(opt.input, in));
  std::optional<AltCircuitWitness> witness;
  if (opt.witness) witness = find_alternating_circuit(g, search_options(opt));
  out << to_dot(g, witness ? &*witness : nullptr);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Pomset proof-net correctness, proofification and SAT reduction"};
  app.name("pomset");
  app.require_subcommand(1);
  Options opt;

  auto add_input = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("input", opt.input, what)->required();
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", opt.budget, "cap on search node expansions");
  };
  auto add_dot = [&](CLI::App* cmd) {
    cmd->add_option("--dot", opt.dot_path, "also write a Graphviz rendering");
  };

  auto* check = app.add_subcommand("check", "check a proof structure file");
  add_input(check, "structure file or -");
  add_budget(check);
  add_dot(check);

  auto* find = app.add_subcommand("find-circuit",
                                  "search a matched digraph for an alternating circuit");
  add_input(find, "graph file or -");
  add_budget(find);
  add_dot(find);

  auto* proofify_cmd =
      app.add_subcommand("proofify", "encode a matched digraph as a proof structure");
  add_input(proofify_cmd, "graph file or -");
  proofify_cmd->add_flag("--drop-isolated", opt.drop_isolated,
                         "remove matched pairs without non-matching arcs first");
  proofify_cmd->add_flag("--map", opt.map, "append the reduction map as comments");
  add_dot(proofify_cmd);

  auto* to_rb_cmd = app.add_subcommand("to-rb", "translate a proof structure to its RB-graph");
  add_input(to_rb_cmd, "structure file or -");
  to_rb_cmd->add_flag("--map", opt.map, "append the vertex origins as comments");
  add_dot(to_rb_cmd);

  auto* sat = app.add_subcommand("sat", "CNF reduction commands");
  sat->require_subcommand(1);
  auto* encode_cmd = sat->add_subcommand("encode", "reduce DIMACS CNF to a matched digraph");
  add_input(encode_cmd, "DIMACS file or -");
  encode_cmd->add_flag("--map", opt.map, "append the occurrence labels as comments");
  add_dot(encode_cmd);
  auto* solve_cmd = sat->add_subcommand("solve", "decide DIMACS CNF through the reduction");
  add_input(solve_cmd, "DIMACS file or -");
  add_budget(solve_cmd);
  add_dot(solve_cmd);
  solve_cmd->add_flag("--verify-oracle", opt.verify_oracle,
                      "cross-check with brute-force enumeration");

  auto* dot = app.add_subcommand("dot", "render a matched digraph in Graphviz format");
  add_input(dot, "graph file or -");
  dot->add_flag("--witness", opt.witness, "highlight the first alternating circuit");
  add_budget(dot);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(opt, in, out);
    if (find->parsed()) return cmd_find_circuit(opt, in, out);
    if (proofify_cmd->parsed()) return cmd_proofify(opt, in, out);
    if (to_rb_cmd->parsed()) return cmd_to_rb(opt, in, out);
    if (encode_cmd->parsed()) return cmd_sat_encode(opt, in, out);
    if (solve_cmd->parsed()) return cmd_sat_solve(opt, in, out);
    if (dot->parsed()) return cmd_dot(opt, in, out);
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace pomset::cli
