#include "rftag/text.hpp"

#include <cctype>
#include <sstream>

#include "rftag/error.hpp"

namespace rftag {

namespace {

struct Pos {
  std::size_t line = 1;
  std::size_t col = 1;
};

[[noreturn]] void syntax_error(Pos p, const std::string& msg) {
  fail(Errc::parse_error, "line " + std::to_string(p.line) + ", col " + std::to_string(p.col) + ": " + msg);
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool valid_terminal_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!name_char(c)) return false;
  }
  return true;
}

bool valid_nonterminal_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!name_char(c)) return false;
  }
  return true;
}

// Tokenizer over one tree expression; tracks column for diagnostics.
struct TreeLexer {
  const std::string& text;
  std::size_t i = 0;
  std::size_t line;
  std::size_t col0;  // column of text[0] in the original file

  Pos pos() const { return {line, col0 + i}; }

  void skip_ws() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  }

  bool eof() {
    skip_ws();
    return i >= text.size();
  }

  char peek() {
    skip_ws();
    return i < text.size() ? text[i] : '\0';
  }

  // atom = [@]name[*] or <eps>
  struct Atom {
    std::string name;
    bool anchor = false;
    bool foot = false;
    Pos at;
  };

  Atom read_atom() {
    skip_ws();
    Atom a;
    a.at = pos();
    if (i < text.size() && text[i] == '@') {
      a.anchor = true;
      ++i;
    }
    if (i < text.size() && text[i] == '<') {
      std::size_t start = i;
      while (i < text.size() && text[i] != '>') ++i;
      if (i >= text.size()) syntax_error(a.at, "unterminated '<...>' token");
      ++i;
      a.name = text.substr(start, i - start);
      if (a.name != kEpsilonName) syntax_error(a.at, "unknown token '" + a.name + "'");
    } else {
      std::size_t start = i;
      while (i < text.size() && name_char(text[i])) ++i;
      if (i == start) syntax_error(a.at, "expected a symbol");
      a.name = text.substr(start, i - start);
    }
    if (i < text.size() && text[i] == '*') {
      a.foot = true;
      ++i;
    }
    return a;
  }
};

Symbol symbol_from_name(const std::string& name, Pos at) {
  if (name == kEpsilonName) return Symbol::epsilon();
  if (valid_terminal_name(name)) return Symbol::terminal(name);
  if (valid_nonterminal_name(name)) return Symbol::nonterminal(name);
  syntax_error(at, "'" + name + "' is neither a terminal nor a non-terminal name");
}

Tree leaf_from_atom(const TreeLexer::Atom& a) {
  Tree t;
  t.label = symbol_from_name(a.name, a.at);
  if (a.foot) {
    if (!t.label.is_nonterminal()) syntax_error(a.at, "foot marker on a terminal");
    t.foot = true;
  }
  if (a.anchor) {
    if (!t.label.is_terminal()) syntax_error(a.at, "anchor marker on a non-terminal");
    t.anchor = true;
  }
  return t;
}

Tree parse_tree_expr(TreeLexer& lx) {
  Pos open_at = lx.pos();
  if (lx.peek() != '(') syntax_error(open_at, "expected '('");
  ++lx.i;
  TreeLexer::Atom label = lx.read_atom();
  Tree t = leaf_from_atom(label);
  while (true) {
    char c = lx.peek();
    if (c == ')') {
      ++lx.i;
      break;
    }
    if (c == '\0') syntax_error(open_at, "unclosed '('");
    if (c == '(') {
      t.children.push_back(parse_tree_expr(lx));
    } else {
      t.children.push_back(leaf_from_atom(lx.read_atom()));
    }
  }
  if (!t.children.empty() && t.foot) {
    syntax_error(label.at, "foot marker on a non-leaf node");
  }
  return t;
}

Tree parse_tree_at(const std::string& expr, std::size_t line, std::size_t col) {
  TreeLexer lx{expr, 0, line, col};
  Tree t = parse_tree_expr(lx);
  if (!lx.eof()) syntax_error(lx.pos(), "trailing text after tree");
  return t;
}

std::string strip_comment(const std::string& line) {
  auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void collect_alphabet(const Tree& t, TagGrammar& g) {
  if (t.label.is_terminal()) g.terminals.insert(t.label);
  if (t.label.is_nonterminal()) g.nonterminals.insert(t.label);
  for (const Tree& c : t.children) collect_alphabet(c, g);
}

}  // namespace

TagGrammar parse_grammar_file(const std::string& text) {
  TagGrammar g;
  bool have_start = false;
  std::size_t auto_init = 0, auto_aux = 0;
  std::map<std::string, std::size_t> tree_lines;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.rfind("start:", 0) == 0) {
      std::string name = trim(line.substr(6));
      if (!valid_nonterminal_name(name)) {
        syntax_error({lineno, 1}, "start symbol must be a non-terminal name");
      }
      g.start = Symbol::nonterminal(name);
      have_start = true;
      continue;
    }

    bool is_init = line.rfind("init", 0) == 0;
    bool is_aux = !is_init && line.rfind("aux", 0) == 0;
    if (!is_init && !is_aux) {
      syntax_error({lineno, 1}, "expected 'start:', 'init' or 'aux'");
    }
    std::size_t cursor = is_init ? 4 : 3;
    std::size_t colon = line.find(':', cursor);
    if (colon == std::string::npos) syntax_error({lineno, 1}, "missing ':' after tree keyword");
    std::string name = trim(line.substr(cursor, colon - cursor));
    if (name.empty()) {
      name = is_init ? "alpha" + std::to_string(++auto_init) : "beta" + std::to_string(++auto_aux);
    }
    if (g.initial.count(name) || g.auxiliary.count(name)) {
      syntax_error({lineno, 1}, "duplicate tree name '" + name + "'");
    }
    Tree t = parse_tree_at(line.substr(colon + 1), lineno, colon + 2);
    tree_lines[name] = lineno;
    if (is_init) {
      g.initial.emplace(name, std::move(t));
    } else {
      g.auxiliary.emplace(name, std::move(t));
    }
  }

  if (!have_start) fail(Errc::parse_error, "no start symbol ('start: X' line missing)");
  g.nonterminals.insert(g.start);
  for (const auto& [name, t] : g.initial) collect_alphabet(t, g);
  for (const auto& [name, t] : g.auxiliary) collect_alphabet(t, g);

  std::vector<Violation> bad = validate_grammar(g);
  if (!bad.empty()) {
    const Violation& v = bad.front();
    std::string where = v.tree_name.empty()
                            ? std::string("grammar")
                            : "tree '" + v.tree_name + "' (line " +
                                  std::to_string(tree_lines.count(v.tree_name) ? tree_lines[v.tree_name] : 0) +
                                  ", node " + v.where.to_string() + ")";
    fail(Errc::invalid_grammar, where + ": " + v.message);
  }
  return g;
}

std::string render_grammar(const TagGrammar& g) {
  std::ostringstream os;
  os << "start: " << g.start.name << "\n";
  for (const auto& [name, t] : g.initial) {
    os << "init " << name << ": " << render_tree(t) << "\n";
  }
  for (const auto& [name, t] : g.auxiliary) {
    os << "aux " << name << ": " << render_tree(t) << "\n";
  }
  return os.str();
}

Tree parse_tree_text(const std::string& text) { return parse_tree_at(text, 1, 1); }

Cfg parse_cfg_file(const std::string& text) {
  Cfg c;
  bool have_start = false;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.rfind("start:", 0) == 0) {
      std::string name = trim(line.substr(6));
      if (!valid_nonterminal_name(name)) {
        syntax_error({lineno, 1}, "start symbol must be a non-terminal name");
      }
      c.start = Symbol::nonterminal(name);
      have_start = true;
      continue;
    }

    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.size() < 2 || toks[1] != "->") {
      syntax_error({lineno, 1}, "expected 'LHS -> ...'");
    }
    if (!valid_nonterminal_name(toks[0])) {
      syntax_error({lineno, 1}, "left-hand side must be a non-terminal");
    }
    Production p;
    p.lhs = Symbol::nonterminal(toks[0]);
    c.nonterminals.insert(p.lhs);
    if (toks.size() == 3 && toks[2] == kEpsilonName) {
      // empty right-hand side
    } else {
      for (std::size_t k = 2; k < toks.size(); ++k) {
        if (toks[k] == kEpsilonName) {
          syntax_error({lineno, 1}, "'<eps>' cannot appear in a non-empty right-hand side");
        }
        Symbol s = symbol_from_name(toks[k], {lineno, 1});
        if (s.is_terminal()) c.terminals.insert(s);
        else c.nonterminals.insert(s);
        p.rhs.push_back(std::move(s));
      }
    }
    if (!have_start) {
      c.start = p.lhs;
      have_start = true;
    }
    c.productions.push_back(std::move(p));
  }

  std::vector<std::string> bad = validate_cfg(c);
  if (!bad.empty()) fail(Errc::invalid_cfg, bad.front());
  return c;
}

std::string render_cfg(const Cfg& c) {
  std::ostringstream os;
  os << "start: " << c.start.name << "\n";
  for (const Production& p : c.productions) {
    os << p.lhs.name << " ->";
    if (p.rhs.empty()) {
      os << ' ' << kEpsilonName;
    } else {
      for (const Symbol& s : p.rhs) os << ' ' << s.name;
    }
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> validate_cfg(const Cfg& c) {
  std::vector<std::string> out;
  if (!c.nonterminals.count(c.start)) {
    out.push_back("start symbol '" + c.start.name + "' is not a non-terminal of the grammar");
  }
  for (const Production& p : c.productions) {
    if (!c.nonterminals.count(p.lhs)) {
      out.push_back("production head '" + p.lhs.name + "' missing from non-terminal set");
    }
    for (const Symbol& s : p.rhs) {
      bool known = s.is_terminal() ? c.terminals.count(s) > 0 : c.nonterminals.count(s) > 0;
      if (s.is_epsilon() || !known) {
        out.push_back("right-hand side symbol '" + s.name + "' not in the alphabet");
      }
    }
  }
  return out;
}

}  // namespace rftag
