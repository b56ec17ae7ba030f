#include "rftag/grammar.hpp"

#include <algorithm>

#include "rftag/error.hpp"

namespace rftag {

bool is_substitution_node(const Tree& node) {
  return node.leaf() && node.label.is_nonterminal() && !node.foot;
}

namespace {

void check_tree(const TagGrammar& g, const std::string& name, const Tree& t,
                bool is_aux, std::vector<Violation>& out) {
  const Symbol root_label = t.label;
  std::size_t foot_count = 0;
  std::size_t anchor_count = 0;

  std::vector<std::pair<NodeAddress, const Tree*>> stack;
  stack.emplace_back(NodeAddress::root(), &t);
  // preorder walk collecting per-node violations
  std::vector<std::pair<NodeAddress, const Tree*>> nodes;
  while (!stack.empty()) {
    auto [addr, node] = stack.back();
    stack.pop_back();
    nodes.emplace_back(addr, node);
    for (std::size_t i = node->children.size(); i-- > 0;) {
      stack.emplace_back(addr.child(i), &node->children[i]);
    }
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [addr, node] : nodes) {
    const Symbol& sym = node->label;
    if (sym.is_epsilon() && sym.name != kEpsilonName) {
      out.push_back({name, addr, "epsilon symbol must be named '" + std::string(kEpsilonName) + "'"});
    }
    bool known = g.terminals.count(sym) || g.nonterminals.count(sym) || sym.is_epsilon();
    if (!known) {
      out.push_back({name, addr, "label '" + sym.name + "' is not in the grammar alphabet"});
    }
    if (!node->leaf() && !sym.is_nonterminal()) {
      out.push_back({name, addr, "non-frontier node labeled with a terminal"});
    }
    if (node->foot) {
      ++foot_count;
      if (!node->leaf()) {
        out.push_back({name, addr, "foot on non-frontier node"});
      }
      if (!sym.is_nonterminal()) {
        out.push_back({name, addr, "foot labeled with a terminal"});
      } else if (sym != root_label) {
        out.push_back({name, addr, "foot label differs from root label"});
      }
    }
    if (node->anchor) {
      ++anchor_count;
      if (!node->leaf() || !sym.is_terminal()) {
        out.push_back({name, addr, "anchor must be a frontier terminal"});
      }
    }
  }

  if (foot_count > 1) {
    out.push_back({name, NodeAddress::root(), "more than one foot node"});
  }
  if (anchor_count > 1) {
    out.push_back({name, NodeAddress::root(), "more than one anchor"});
  }
  if (is_aux && foot_count == 0) {
    out.push_back({name, NodeAddress::root(), "auxiliary tree has no foot node"});
  }
  if (!is_aux && foot_count > 0) {
    out.push_back({name, NodeAddress::root(), "initial tree has a foot node"});
  }
}

}  // namespace

std::vector<Violation> validate_grammar(const TagGrammar& g) {
  std::vector<Violation> out;

  for (const Symbol& s : g.terminals) {
    if (s.name.empty()) out.push_back({"", {}, "empty terminal name"});
    if (!s.is_terminal()) out.push_back({"", {}, "terminal set contains non-terminal kind: " + s.name});
    if (s.name == kEpsilonName) out.push_back({"", {}, "'<eps>' is reserved for the epsilon symbol"});
    if (g.nonterminals.count(Symbol::nonterminal(s.name))) {
      out.push_back({"", {}, "symbol '" + s.name + "' is both terminal and non-terminal"});
    }
  }
  for (const Symbol& s : g.nonterminals) {
    if (s.name.empty()) out.push_back({"", {}, "empty non-terminal name"});
    if (!s.is_nonterminal()) out.push_back({"", {}, "non-terminal set contains wrong kind: " + s.name});
    if (s.name == kEpsilonName) out.push_back({"", {}, "'<eps>' is reserved for the epsilon symbol"});
  }
  if (!g.nonterminals.count(g.start)) {
    out.push_back({"", {}, "start symbol '" + g.start.name + "' is not a non-terminal of the grammar"});
  }

  for (const auto& [name, t] : g.initial) check_tree(g, name, t, /*is_aux=*/false, out);
  for (const auto& [name, t] : g.auxiliary) check_tree(g, name, t, /*is_aux=*/true, out);
  return out;
}

std::vector<NodeAddress> spine(const Tree& aux) {
  auto foot = find_foot(aux);
  if (!foot) fail(Errc::not_an_auxiliary_tree, "tree has no foot node");
  std::vector<NodeAddress> out;
  NodeAddress cur;
  out.push_back(cur);
  for (std::size_t i : foot->path) {
    cur = cur.child(i);
    out.push_back(cur);
  }
  return out;
}

bool is_proper(const Tree& aux) {
  std::vector<NodeAddress> sp = spine(aux);
  for (std::size_t i = 1; i + 1 < sp.size(); ++i) {
    if (node_at(aux, sp[i])->label == aux.label) return false;
  }
  return true;
}

std::vector<Tree> proper_segments(const Tree& aux) {
  std::vector<NodeAddress> sp = spine(aux);
  std::vector<std::size_t> cuts;  // spine positions where the root label recurs
  for (std::size_t i = 1; i + 1 < sp.size(); ++i) {
    if (node_at(aux, sp[i])->label == aux.label) cuts.push_back(i);
  }
  cuts.push_back(sp.size() - 1);  // the foot closes the last segment

  std::vector<Tree> segments;
  NodeAddress seg_start;  // root of the current segment, absolute
  for (std::size_t cut : cuts) {
    const NodeAddress& abs_cut = sp[cut];
    // cut address relative to the segment root
    NodeAddress rel;
    rel.path.assign(abs_cut.path.begin() + static_cast<std::ptrdiff_t>(seg_start.path.size()),
                    abs_cut.path.end());
    Tree seg = *node_at(aux, seg_start);
    Tree foot_leaf;
    foot_leaf.label = aux.label;
    foot_leaf.foot = true;
    segments.push_back(rel.is_root() ? foot_leaf : replace_at(seg, rel, foot_leaf));
    seg_start = abs_cut;
  }
  return segments;
}

Tree adjoin(const Tree& host, const NodeAddress& at, const Tree& aux) {
  auto aux_foot = find_foot(aux);
  if (!aux_foot) fail(Errc::not_an_auxiliary_tree, "adjunct has no foot node");
  const Tree* site = node_at(host, at);
  if (!site) fail(Errc::invalid_address, "no node at " + at.to_string());
  if (site->label != aux.label) {
    fail(Errc::label_mismatch,
         "site label '" + site->label.name + "' differs from adjunct root '" + aux.label.name + "'");
  }
  if (is_substitution_node(*site)) {
    fail(Errc::illegal_site, "cannot adjoin at a substitution node (" + at.to_string() + ")");
  }

  Tree excised = *site;
  Tree inserted = aux;
  Tree* foot_node = &inserted;
  for (std::size_t i : aux_foot->path) foot_node = &foot_node->children[i];
  *foot_node = std::move(excised);  // the excised subtree keeps its own flags
  return replace_at(host, at, std::move(inserted));
}

Tree substitute(const Tree& host, const NodeAddress& at, const Tree& init) {
  if (has_foot(init)) fail(Errc::not_an_initial_tree, "substituted tree has a foot node");
  const Tree* site = node_at(host, at);
  if (!site) fail(Errc::invalid_address, "no node at " + at.to_string());
  if (!site->leaf()) fail(Errc::illegal_site, "substitution site must be a frontier node");
  if (site->foot) fail(Errc::illegal_site, "cannot substitute at a foot node");
  if (!site->label.is_nonterminal()) fail(Errc::illegal_site, "substitution site must be a non-terminal");
  if (site->label != init.label) {
    fail(Errc::label_mismatch,
         "site label '" + site->label.name + "' differs from initial root '" + init.label.name + "'");
  }
  return replace_at(host, at, init);
}

Tree project_labels(const Tree& t, const ProjectionMap& m) {
  auto it = m.to_base.find(t.label);
  if (it == m.to_base.end()) {
    fail(Errc::unmapped_label, "no mapping for label '" + t.label.name + "'");
  }
  Tree out;
  out.label = it->second;
  out.foot = t.foot;
  out.anchor = t.anchor;
  out.children.reserve(t.children.size());
  for (const Tree& c : t.children) out.children.push_back(project_labels(c, m));
  return out;
}

namespace {

Symbol refine(const Symbol& s, int idx) {
  if (s.is_epsilon()) return s;  // the epsilon name is reserved; never refined
  return {s.name + "_" + std::to_string(idx), s.kind};
}

// Relabel with everything at index 0.
Tree relabel_zero(const Tree& t) {
  Tree out = t;
  out.label = refine(t.label, 0);
  for (std::size_t i = 0; i < out.children.size(); ++i) {
    out.children[i] = relabel_zero(t.children[i]);
  }
  return out;
}

}  // namespace

std::pair<TagGrammar, ProjectionMap> eliminate_improper(const TagGrammar& g) {
  if (!validate_grammar(g).empty()) {
    fail(Errc::invalid_grammar, "eliminate_improper requires a valid grammar");
  }

  TagGrammar out;
  ProjectionMap pm;
  out.start = refine(g.start, 0);
  pm.to_base[Symbol::epsilon()] = Symbol::epsilon();
  for (const Symbol& s : g.terminals) {
    for (int idx : {0, 1}) {
      Symbol r = refine(s, idx);
      out.terminals.insert(r);
      pm.to_base[r] = s;
    }
  }
  for (const Symbol& s : g.nonterminals) {
    for (int idx : {0, 1}) {
      Symbol r = refine(s, idx);
      out.nonterminals.insert(r);
      pm.to_base[r] = s;
    }
  }

  for (const auto& [name, t] : g.initial) {
    out.initial.emplace(name, relabel_zero(t));
  }
  for (const auto& [name, t] : g.auxiliary) {
    std::vector<NodeAddress> sp = spine(t);
    std::set<NodeAddress> spine_set(sp.begin(), sp.end());
    for (int b : {0, 1}) {
      // root and foot carry b; interior spine nodes that repeat the root's
      // base symbol carry 1-b, which is what removes the improperness
      Tree copy = relabel_zero(t);
      Tree* root = &copy;
      root->label = refine(t.label, b);
      for (std::size_t i = 1; i < sp.size(); ++i) {
        Tree* node = &copy;
        for (std::size_t ci : sp[i].path) node = &node->children[ci];
        const Tree* orig = node_at(t, sp[i]);
        bool is_foot = (i + 1 == sp.size());
        if (is_foot) {
          node->label = refine(orig->label, b);
        } else if (orig->label == t.label) {
          node->label = refine(orig->label, 1 - b);
        }
      }
      out.auxiliary.emplace(name + "_" + std::to_string(b), std::move(copy));
    }
  }
  return {std::move(out), std::move(pm)};
}

bool is_completed_tree(const TagGrammar& g, const Tree& t) {
  if (t.label != g.start) return false;
  if (has_foot(t)) return false;
  std::vector<const Tree*> stack{&t};
  while (!stack.empty()) {
    const Tree* n = stack.back();
    stack.pop_back();
    if (n->leaf()) {
      if (n->label.is_nonterminal()) return false;
    } else {
      for (const Tree& c : n->children) stack.push_back(&c);
    }
  }
  return true;
}

}  // namespace rftag
