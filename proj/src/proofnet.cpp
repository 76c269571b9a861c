#include "pomset/proofnet.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pomset/text_util.hpp"

namespace pomset {

struct Formula::Node {
  Connective kind;
  std::string name;
  bool dual = false;
  std::optional<Formula> left;
  std::optional<Formula> right;
  std::size_t leaves = 1;
};

Formula Formula::atom(std::string name, bool dual) {
  auto node = std::make_shared<Node>();
  node->kind = Connective::atom;
  node->name = std::move(name);
  node->dual = dual;
  return Formula(std::move(node));
}

Formula Formula::binary(Connective kind, Formula left, Formula right) {
  if (kind == Connective::atom) {
    throw std::invalid_argument("Formula::binary needs a binary connective");
  }
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->leaves = left.leaf_count() + right.leaf_count();
  node->left = std::move(left);
  node->right = std::move(right);
  return Formula(std::move(node));
}

Formula Formula::tensor(Formula l, Formula r) {
  return binary(Connective::tensor, std::move(l), std::move(r));
}
Formula Formula::par(Formula l, Formula r) {
  return binary(Connective::par, std::move(l), std::move(r));
}
Formula Formula::before(Formula l, Formula r) {
  return binary(Connective::before, std::move(l), std::move(r));
}

Connective Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
bool Formula::dual() const { return node_->dual; }
const Formula& Formula::left() const { return *node_->left; }
const Formula& Formula::right() const { return *node_->right; }
std::size_t Formula::leaf_count() const { return node_->leaves; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_atom()) return a.name() == b.name() && a.dual() == b.dual();
  return a.left() == b.left() && a.right() == b.right();
}

namespace {

char symbol(Connective c) {
  switch (c) {
    case Connective::tensor:
      return '*';
    case Connective::par:
      return '|';
    case Connective::before:
      return '<';
    case Connective::atom:
      break;
  }
  return '?';
}

void print(const Formula& f, std::string& out) {
  if (f.is_atom()) {
    out += f.name();
    if (f.dual()) out += '^';
    return;
  }
  out += '(';
  print(f.left(), out);
  out += ' ';
  out += symbol(f.kind());
  out += ' ';
  print(f.right(), out);
  out += ')';
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  Formula formula() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of formula");
    if (text_[pos_] == '(') {
      ++pos_;
      Formula left = formula();
      skip_space();
      if (pos_ == text_.size()) fail("expected connective");
      Connective kind;
      switch (text_[pos_]) {
        case '*':
          kind = Connective::tensor;
          break;
        case '|':
          kind = Connective::par;
          break;
        case '<':
          kind = Connective::before;
          break;
        default:
          fail(std::string("expected `*`, `|` or `<`, found `") + text_[pos_] +
               "`");
      }
      ++pos_;
      Formula right = formula();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') {
        fail("expected `)`; every binary connective needs its own parentheses");
      }
      ++pos_;
      return Formula::binary(kind, std::move(left), std::move(right));
    }
    return atom();
  }

  Formula atom() {
    const std::size_t start = pos_;
    if (text_[pos_] < 'a' || text_[pos_] > 'z') {
      fail(std::string("expected atom or `(`, found `") + text_[pos_] + "`");
    }
    ++pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_') {
        ++pos_;
      } else {
        break;
      }
    }
    std::string name(text_.substr(start, pos_ - start));
    bool dual = false;
    if (pos_ < text_.size() && text_[pos_] == '^') {
      dual = true;
      ++pos_;
    }
    return Formula::atom(std::move(name), dual);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Visits every subformula in preorder with its path.
void walk(const Formula& f, std::string& path,
          const std::function<void(const Formula&, const std::string&)>& fn) {
  fn(f, path);
  if (f.is_atom()) return;
  path.push_back('L');
  walk(f.left(), path, fn);
  path.back() = 'R';
  walk(f.right(), path, fn);
  path.pop_back();
}

std::string atom_label(const AtomOccurrence& a) {
  return a.name + (a.dual ? "^" : "") + "@" + to_string(a.address);
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Formula parse_formula(std::string_view text) {
  return FormulaParser(text).parse();
}

std::string to_string(const Address& a) {
  return std::to_string(a.conclusion) + ":" + (a.path.empty() ? "-" : a.path);
}

Address parse_address(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw ParseError("address must be `<conclusion>:<path>`", 1, 1);
  }
  Address a;
  const auto digits = text.substr(0, colon);
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), a.conclusion);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("bad conclusion index `" + std::string(digits) + "`", 1, 1);
  }
  const auto path = text.substr(colon + 1);
  if (path == "-") return a;
  if (path.empty()) throw ParseError("empty path; use `-`", 1, colon + 2);
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] != 'L' && path[i] != 'R') {
      throw ParseError("path steps must be L or R", 1, colon + 2 + i);
    }
  }
  a.path = std::string(path);
  return a;
}

ParallelArcCollision::ParallelArcCollision(const Address& a, const Address& b)
    : StructureError("ParallelArcCollision: web arc between " + to_string(a) +
                     " and " + to_string(b) + " duplicates their axiom") {}

ProofStructure ProofStructure::make(std::vector<Formula> conclusions,
                                    std::vector<Axiom> axioms) {
  ProofStructure ps;
  ps.conclusions_ = std::move(conclusions);

  std::map<Address, AtomOccurrence> atoms;
  for (auto& a : ps.atoms()) atoms.emplace(a.address, a);

  std::map<Address, int> linked;
  for (auto& [a, b] : axioms) {
    if (b < a) std::swap(a, b);
    for (const Address* x : {&a, &b}) {
      auto it = atoms.find(*x);
      if (it == atoms.end()) {
        throw StructureError("axiom endpoint " + to_string(*x) +
                             " is not an atom occurrence");
      }
      ++linked[*x];
    }
    const auto& lhs = atoms.at(a);
    const auto& rhs = atoms.at(b);
    if (lhs.name != rhs.name || lhs.dual == rhs.dual) {
      throw StructureError("axiom " + to_string(a) + " " + to_string(b) +
                           " does not link dual atoms: " + atom_label(lhs) +
                           ", " + atom_label(rhs));
    }
  }
  for (const auto& [address, occ] : atoms) {
    const int count = linked.contains(address) ? linked.at(address) : 0;
    if (count != 1) {
      throw StructureError("atom " + atom_label(occ) + " is in " +
                           std::to_string(count) + " axioms (expected 1)");
    }
  }
  std::sort(axioms.begin(), axioms.end());
  ps.axioms_ = std::move(axioms);
  return ps;
}

std::vector<AtomOccurrence> ProofStructure::atoms() const {
  std::vector<AtomOccurrence> out;
  std::string path;
  for (std::size_t c = 0; c < conclusions_.size(); ++c) {
    walk(conclusions_[c], path, [&](const Formula& f, const std::string& p) {
      if (f.is_atom()) out.push_back({{c, p}, f.name(), f.dual()});
    });
  }
  return out;
}

const Formula& ProofStructure::at(const Address& a) const {
  if (a.conclusion >= conclusions_.size()) {
    throw StructureError("no conclusion " + std::to_string(a.conclusion));
  }
  const Formula* f = &conclusions_[a.conclusion];
  for (char step : a.path) {
    if (f->is_atom()) throw StructureError("no subformula at " + to_string(a));
    f = step == 'L' ? &f->left() : &f->right();
  }
  return *f;
}

ProofStructure parse_structure(std::string_view text) {
  std::vector<Formula> conclusions;
  std::vector<ProofStructure::Axiom> axioms;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    const auto body = detail::strip_comment(line, '#');
    const auto tokens = detail::tokenize(body);
    if (tokens.empty()) continue;
    const auto& head = tokens.front();
    try {
      if (head.text == "conc") {
        if (tokens.size() < 2) throw ParseError("missing formula", 1, head.column);
        const std::size_t start = tokens[1].column - 1;
        std::size_t offset = start;
        try {
          conclusions.push_back(parse_formula(body.substr(start)));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), 1, offset + e.column());
        }
      } else if (head.text == "ax") {
        if (tokens.size() != 3) {
          throw ParseError("expected `ax <addr> <addr>`", 1, head.column);
        }
        try {
          axioms.emplace_back(parse_address(tokens[1].text),
                              parse_address(tokens[2].text));
        } catch (const ParseError&) {
          throw ParseError("bad address in `" + std::string(body) + "`", 1,
                           tokens[1].column);
        }
      } else {
        throw ParseError("unknown declaration `" + std::string(head.text) + "`",
                         1, head.column);
      }
    } catch (const ParseError& e) {
      // Re-anchor on the real line. The message already carries a position
      // prefix from the inner parser, so strip it.
      std::string what = e.what();
      const auto colon = what.find(": ");
      if (colon != std::string::npos) what = what.substr(colon + 2);
      throw ParseError(what, line_no, e.column());
    }
  }
  return ProofStructure::make(std::move(conclusions), std::move(axioms));
}

std::string write_structure(const ProofStructure& ps) {
  std::ostringstream out;
  for (const auto& f : ps.conclusions()) out << "conc " << to_string(f) << '\n';
  for (const auto& [a, b] : ps.axioms()) {
    out << "ax " << to_string(a) << ' ' << to_string(b) << '\n';
  }
  return out.str();
}

namespace {

// Returns the leaf range [first, first + leaf_count) after appending f's arcs.
void collect_web(const Formula& f, Vertex first, std::vector<Arc>& arcs) {
  if (f.is_atom()) return;
  const Vertex mid = first + static_cast<Vertex>(f.left().leaf_count());
  const Vertex end = first + static_cast<Vertex>(f.leaf_count());
  collect_web(f.left(), first, arcs);
  collect_web(f.right(), mid, arcs);
  if (f.kind() == Connective::par) return;
  for (Vertex a = first; a < mid; ++a) {
    for (Vertex b = mid; b < end; ++b) {
      arcs.push_back({a, b});
      if (f.kind() == Connective::tensor) arcs.push_back({b, a});
    }
  }
}

}  // namespace

std::vector<Arc> relation_web(const Formula& f) {
  std::vector<Arc> arcs;
  collect_web(f, 0, arcs);
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

RbTranslation to_rb(const ProofStructure& ps) {
  RbTranslation rb;
  std::map<Address, Vertex> top;  // bottom = top + 1
  std::vector<std::string> names;
  std::vector<std::pair<Vertex, Vertex>> matching;
  std::vector<Arc> arcs;
  auto both = [&](Vertex u, Vertex v) {
    arcs.push_back({u, v});
    arcs.push_back({v, u});
  };

  std::string path;
  for (std::size_t c = 0; c < ps.conclusions().size(); ++c) {
    walk(ps.conclusions()[c], path, [&](const Formula&, const std::string& p) {
      const Address a{c, p};
      const auto t = static_cast<Vertex>(names.size());
      top.emplace(a, t);
      names.push_back(to_string(a) + "/t");
      names.push_back(to_string(a) + "/b");
      rb.origin.push_back({a, End::top});
      rb.origin.push_back({a, End::bottom});
      matching.emplace_back(t, t + 1);
    });
  }
  for (std::size_t c = 0; c < ps.conclusions().size(); ++c) {
    walk(ps.conclusions()[c], path, [&](const Formula& f, const std::string& p) {
      if (f.is_atom()) return;
      const Vertex conclusion_top = top.at({c, p});
      const Vertex left_bottom = top.at({c, p + 'L'}) + 1;
      const Vertex right_bottom = top.at({c, p + 'R'}) + 1;
      both(left_bottom, conclusion_top);
      both(right_bottom, conclusion_top);
      if (f.kind() == Connective::tensor) both(left_bottom, right_bottom);
      if (f.kind() == Connective::before) arcs.push_back({left_bottom, right_bottom});
    });
  }
  for (const auto& [a, b] : ps.axioms()) both(top.at(a), top.at(b));

  rb.graph = MatchedDigraph::assemble(std::move(names), matching, arcs);
  return rb;
}

WebTranslation to_web_graph(const ProofStructure& ps) {
  WebTranslation web;
  std::map<Address, Vertex> index;
  std::vector<std::string> names;
  for (const auto& occ : ps.atoms()) {
    index.emplace(occ.address, static_cast<Vertex>(names.size()));
    names.push_back(to_string(occ.address));
    web.atom.push_back(occ.address);
  }
  std::vector<std::pair<Vertex, Vertex>> matching;
  std::vector<Vertex> mate(names.size());
  for (const auto& [a, b] : ps.axioms()) {
    matching.emplace_back(index.at(a), index.at(b));
    mate[index.at(a)] = index.at(b);
    mate[index.at(b)] = index.at(a);
  }
  std::vector<Arc> arcs;
  Vertex offset = 0;
  for (const auto& f : ps.conclusions()) {
    for (const Arc& a : relation_web(f)) {
      const Arc shifted{a.from + offset, a.to + offset};
      if (mate[shifted.from] == shifted.to) {
        throw ParallelArcCollision(web.atom[shifted.from], web.atom[shifted.to]);
      }
      arcs.push_back(shifted);
    }
    offset += static_cast<Vertex>(f.leaf_count());
  }
  web.graph = MatchedDigraph::assemble(std::move(names), matching, arcs);
  return web;
}

std::string Verdict::describe() const {
  if (correct) return "CORRECT";
  std::string out = "INCORRECT";
  for (const auto& a : reading) out += " " + atom_label(a);
  return out;
}

std::vector<AtomOccurrence> atom_reading(const ProofStructure& ps,
                                         const RbTranslation& rb,
                                         const AltCircuitWitness& w) {
  std::vector<AtomOccurrence> out;
  for (Vertex v : w.circuit.seq) {
    const Address& a = rb.origin.at(v).formula;
    const Formula& f = ps.at(a);
    if (!f.is_atom()) continue;
    if (!out.empty() && out.back().address == a) continue;
    out.push_back({a, f.name(), f.dual()});
  }
  if (out.size() > 1 && out.front().address == out.back().address) {
    out.pop_back();
  }
  return out;
}

Verdict check_correctness(const ProofStructure& ps,
                          const SearchOptions& options) {
  const RbTranslation rb = to_rb(ps);
  Verdict verdict;
  verdict.witness = find_alternating_circuit(rb.graph, options);
  if (verdict.witness) {
    verdict.correct = false;
    verdict.reading = atom_reading(ps, rb, *verdict.witness);
  }
  return verdict;
}

}  // namespace pomset
