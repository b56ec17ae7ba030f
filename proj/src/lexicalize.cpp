#include "rftag/lexicalize.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "rftag/digraph.hpp"
#include "rftag/error.hpp"

namespace rftag {

ExpansionStrategy ExpansionStrategy::leftmost() {
  return {"leftmost", [](const Production&) { return std::size_t{0}; }};
}

ExpansionStrategy ExpansionStrategy::rightmost() {
  return {"rightmost", [](const Production& p) { return p.rhs.size() - 1; }};
}

namespace {

Tree leaf_of(const Symbol& s) {
  Tree t;
  t.label = s;
  return t;
}

void require_valid(const Cfg& c) {
  std::vector<std::string> bad = validate_cfg(c);
  if (!bad.empty()) fail(Errc::invalid_cfg, bad.front());
}

bool has_terminal_leaf(const Tree& t) {
  if (t.leaf()) return t.label.is_terminal();
  return std::any_of(t.children.begin(), t.children.end(), has_terminal_leaf);
}

// Shallowest leftmost terminal leaf becomes the anchor.
Tree anchor_tree(const Tree& t) {
  std::deque<NodeAddress> queue{NodeAddress::root()};
  while (!queue.empty()) {
    NodeAddress at = queue.front();
    queue.pop_front();
    const Tree* node = node_at(t, at);
    if (node->leaf() && node->label.is_terminal()) {
      Tree marked = *node;
      marked.anchor = true;
      return replace_at(t, at, marked);
    }
    for (std::size_t i = 0; i < node->children.size(); ++i) queue.push_back(at.child(i));
  }
  fail(Errc::not_lexicalizable, "tree has no terminal leaf to anchor: " + render_tree(t));
}

std::vector<NodeAddress> substitution_slots(const Tree& t) {
  std::vector<NodeAddress> out;
  for (const NodeAddress& a : all_addresses(t)) {
    if (is_substitution_node(*node_at(t, a))) out.push_back(a);
  }
  return out;
}

}  // namespace

TagGrammar cfg_to_tsg(const Cfg& c) {
  require_valid(c);
  TagGrammar g;
  g.terminals = c.terminals;
  g.nonterminals = c.nonterminals;
  g.start = c.start;
  std::size_t n = 0;
  for (const Production& p : c.productions) {
    Tree t;
    t.label = p.lhs;
    if (p.rhs.empty()) {
      t.children.push_back(leaf_of(Symbol::epsilon()));
    } else {
      for (const Symbol& s : p.rhs) t.children.push_back(leaf_of(s));
    }
    g.initial.emplace("p" + std::to_string(++n), std::move(t));
  }
  return g;
}

Lcg build_lcg(const Cfg& c, const ExpansionStrategy& s) {
  require_valid(c);
  Lcg l;
  l.cfg = c;
  for (const Symbol& t : c.terminals) l.vertices.insert(t);
  for (const Symbol& nt : c.nonterminals) l.vertices.insert(nt);
  for (std::size_t i = 0; i < c.productions.size(); ++i) {
    const Production& p = c.productions[i];
    if (p.rhs.empty()) {
      l.vertices.insert(Symbol::epsilon());
      l.edges.push_back({p.lhs, Symbol::epsilon(), i, 0});
      continue;
    }
    std::size_t sel = s.selector(p);
    if (sel >= p.rhs.size()) fail(Errc::invalid_cfg, "expansion strategy selected a position outside the rhs");
    l.edges.push_back({p.lhs, p.rhs[sel], i, sel});
  }
  return l;
}

namespace {

// Stack the path's productions, expanding only the selected child of each.
Tree stack_path(const Lcg& l, const std::vector<std::size_t>& path, std::size_t idx, const Tree* closing) {
  const LcgEdge& e = l.edges[path[idx]];
  const Production& p = l.cfg.productions[e.production];
  Tree t;
  t.label = p.lhs;
  if (p.rhs.empty()) {
    t.children.push_back(leaf_of(Symbol::epsilon()));
    return t;
  }
  for (const Symbol& s : p.rhs) t.children.push_back(leaf_of(s));
  if (idx + 1 < path.size()) {
    t.children[e.selected] = stack_path(l, path, idx + 1, closing);
  } else if (closing) {
    t.children[e.selected] = *closing;
  }
  return t;
}

std::vector<DigraphEdge> plain_edges(const Lcg& l) {
  std::vector<DigraphEdge> out;
  out.reserve(l.edges.size());
  for (const LcgEdge& e : l.edges) out.push_back({e.src, e.dst});
  return out;
}

}  // namespace

std::set<Tree> lcg_initial_trees(const Lcg& l) {
  auto is_sink = [](const Symbol& v) { return !v.is_nonterminal(); };
  std::set<Tree> out;
  for (const std::vector<std::size_t>& path : enumerate_simple_paths_to_sinks(plain_edges(l), is_sink)) {
    out.insert(stack_path(l, path, 0, nullptr));
  }
  return out;
}

namespace {

// Fill every substitution slot of `t` with every combination of matching
// initial trees, recursively. Leaving slots open is not an option here: two
// copies of one cycle that fill different slots put different segment
// variants on the same spine-graph edge, and the variants then recombine
// into cycle trees no elementary tree realizes. Closing all slots keeps the
// emitted set a full per-segment product, which the mixes cannot leave.
std::set<Tree> close_cycle_slots(const Tree& t, const std::set<Tree>& inits) {
  std::set<Tree> cur{t};
  for (std::size_t pass = 0;; ++pass) {
    if (pass >= 32 || cur.size() > 10000) {
      fail(Errc::not_lexicalizable, "substitution closure of an auxiliary tree diverged");
    }
    bool open = false;
    std::set<Tree> next;
    for (const Tree& tree : cur) {
      std::vector<NodeAddress> slots = substitution_slots(tree);
      if (slots.empty()) {
        next.insert(tree);
        continue;
      }
      open = true;
      const Symbol& want = node_at(tree, slots.front())->label;
      for (const Tree& init : inits) {
        if (init.label == want) next.insert(substitute(tree, slots.front(), init));
      }
    }
    cur = std::move(next);
    if (!open) break;
  }
  return cur;
}

}  // namespace

std::set<Tree> lcg_aux_trees(const Lcg& l, bool lexicalize) {
  std::set<Tree> raw;
  for (const std::vector<std::size_t>& cyc : enumerate_simple_cycles(plain_edges(l))) {
    Tree foot = leaf_of(l.edges[cyc[0]].src);
    foot.foot = true;
    raw.insert(stack_path(l, cyc, 0, &foot));
  }
  if (!lexicalize) return raw;

  std::set<Tree> inits = lcg_initial_trees(l);
  std::set<Tree> out;
  for (const Tree& t : raw) {
    for (const Tree& closed : close_cycle_slots(t, inits)) {
      out.insert(anchor_tree(closed));
    }
  }
  return out;
}

TagGrammar cfg_to_regular_tag(const Cfg& c, const ExpansionStrategy& s, bool lexicalized) {
  require_valid(c);
  if (lexicalized) {
    for (const Production& p : c.productions) {
      if (p.rhs.empty()) {
        fail(Errc::not_lexicalizable, "epsilon production for '" + p.lhs.name + "'");
      }
    }
    // unit-production cycles make the grammar infinitely ambiguous
    std::vector<DigraphEdge> units;
    for (const Production& p : c.productions) {
      if (p.rhs.size() == 1 && p.rhs[0].is_nonterminal()) units.push_back({p.lhs, p.rhs[0]});
    }
    if (!enumerate_simple_cycles(units).empty()) {
      fail(Errc::not_lexicalizable, "unit-production cycle");
    }
  }

  Lcg l = build_lcg(c, s);
  std::set<Tree> inits = lcg_initial_trees(l);
  std::set<Tree> auxes = lcg_aux_trees(l, lexicalized);

  TagGrammar g;
  g.terminals = c.terminals;
  g.nonterminals = c.nonterminals;
  g.start = c.start;
  std::size_t n = 0;
  for (const Tree& t : inits) {
    g.initial.emplace("alpha" + std::to_string(++n), lexicalized ? anchor_tree(t) : t);
  }
  n = 0;
  for (const Tree& t : auxes) {
    g.auxiliary.emplace("beta" + std::to_string(++n), t);
  }
  return g;
}

TagGrammar close_substitution(const TagGrammar& g, const ClosureLimits& limits) {
  if (!validate_grammar(g).empty()) {
    fail(Errc::invalid_grammar, "close_substitution requires a valid grammar");
  }

  auto slotted = [](const Tree& t) { return !substitution_slots(t).empty(); };
  std::vector<Tree> inits, auxes;
  for (const auto& [name, t] : g.initial) inits.push_back(t);
  for (const auto& [name, t] : g.auxiliary) auxes.push_back(t);

  bool untouched = std::none_of(inits.begin(), inits.end(), slotted) &&
                   std::none_of(auxes.begin(), auxes.end(), slotted);
  if (untouched) return g;

  auto expand_list = [&](std::vector<Tree>& list, const std::vector<Tree>& substituents) {
    std::set<Tree> next;
    bool any = false;
    for (const Tree& t : list) {
      std::vector<NodeAddress> slots = substitution_slots(t);
      if (slots.empty()) {
        next.insert(t);
        continue;
      }
      any = true;
      const NodeAddress& slot = slots.front();
      const Symbol& want = node_at(t, slot)->label;
      for (const Tree& init : substituents) {
        if (init.label == want) next.insert(substitute(t, slot, init));
      }
      // a slot with no matching initial tree can never complete; the tree is
      // dropped, which leaves the completed-tree set untouched
    }
    list.assign(next.begin(), next.end());
    return any;
  };

  for (std::size_t pass = 0;; ++pass) {
    if (pass >= limits.max_passes) {
      fail(Errc::nontermination_guard,
           "substitution closure did not converge in " + std::to_string(limits.max_passes) + " passes");
    }
    bool i_open = expand_list(inits, inits);
    bool a_open = expand_list(auxes, inits);
    if (inits.size() + auxes.size() > limits.max_trees) {
      fail(Errc::nontermination_guard,
           "substitution closure exceeded " + std::to_string(limits.max_trees) + " trees");
    }
    if (!i_open && !a_open) break;
  }

  TagGrammar out;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  out.start = g.start;
  std::size_t n = 0;
  for (const Tree& t : inits) out.initial.emplace("i" + std::to_string(++n), t);
  n = 0;
  for (const Tree& t : auxes) out.auxiliary.emplace("a" + std::to_string(++n), t);
  return out;
}

}  // namespace rftag
