#include "rftag/spine_graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rftag/digraph.hpp"
#include "rftag/error.hpp"

namespace rftag {

namespace {

NodeAddress slot_address(const Tree& segment) {
  auto a = find_foot(segment);
  if (!a) fail(Errc::invalid_address, "segment without a splice slot");
  return *a;
}

// Replace the slot of `a` with tree `b`; the result's slot is b's slot.
Tree splice_segments(const Tree& a, const Tree& b) {
  return replace_at(a, slot_address(a), b);
}

bool edge_less(const SpineEdge& a, const SpineEdge& b) {
  if (a.src != b.src) return a.src < b.src;
  if (a.dst != b.dst) return a.dst < b.dst;
  if (a.label.aux_name != b.label.aux_name) return a.label.aux_name < b.label.aux_name;
  return a.label.index < b.label.index;
}

bool same_edge(const SpineEdge& a, const SpineEdge& b) {
  return a.src == b.src && a.dst == b.dst && a.label.aux_name == b.label.aux_name &&
         a.label.index == b.label.index;
}

}  // namespace

SpineGraph build_spine_graph(const TagGrammar& g) {
  if (!validate_grammar(g).empty()) {
    fail(Errc::invalid_grammar, "spine graph requires a valid grammar");
  }

  // Roots of auxiliary trees with at least one spine step. A single-node
  // auxiliary tree (root = foot) adjoins as the identity and contributes
  // nothing here.
  std::set<Symbol> aux_roots;
  for (const auto& [name, t] : g.auxiliary) {
    if (!t.leaf()) aux_roots.insert(t.label);
  }

  std::vector<SpineEdge> edges;
  for (const auto& [name, t] : g.auxiliary) {
    std::vector<NodeAddress> sp = spine(t);
    for (std::size_t j = 0; j + 1 < sp.size(); ++j) {
      const Tree* src_node = node_at(t, sp[j]);
      std::size_t child_idx = sp[j + 1].path.back();
      Tree slot;
      slot.label = node_at(t, sp[j + 1])->label;
      slot.foot = true;
      Tree segment = *src_node;
      segment.children[child_idx] = slot;
      edges.push_back(SpineEdge{src_node->label, slot.label, {name, j, std::move(segment)}});
    }
  }

  // contiguous indices per auxiliary tree, keeping spine order
  auto renumber = [](std::vector<SpineEdge>& list) {
    std::map<std::string, std::vector<SpineEdge*>> by_aux;
    for (SpineEdge& e : list) by_aux[e.label.aux_name].push_back(&e);
    for (auto& [name, group] : by_aux) {
      std::sort(group.begin(), group.end(),
                [](const SpineEdge* a, const SpineEdge* b) { return a->label.index < b->label.index; });
      for (std::size_t i = 0; i < group.size(); ++i) group[i]->label.index = i;
    }
  };

  // Reduction: a vertex that roots no auxiliary tree can only be crossed by
  // the stack automaton's advance move, which stays within one auxiliary
  // tree. So each of its incoming edges (beta, j) fuses with the outgoing
  // edge (beta, j+1) and with nothing else.
  while (true) {
    std::set<Symbol> present;
    for (const SpineEdge& e : edges) {
      present.insert(e.src);
      present.insert(e.dst);
    }
    const Symbol* victim = nullptr;
    for (const Symbol& v : present) {
      if (!aux_roots.count(v)) {
        victim = &v;
        break;
      }
    }
    if (!victim) break;

    std::vector<SpineEdge> next;
    std::vector<SpineEdge> incoming, leaving;  // leaving includes self-loops
    for (SpineEdge& e : edges) {
      if (e.src == *victim) leaving.push_back(std::move(e));
      else if (e.dst == *victim) incoming.push_back(std::move(e));
      else next.push_back(std::move(e));
    }
    // every spine enters the victim from outside (a tree's endpoints root
    // it), so chasing continuations from the incoming edges consumes all of
    // the victim's edges, self-loops included
    for (SpineEdge& ein : incoming) {
      SpineEdge fused = std::move(ein);
      while (fused.dst == *victim) {
        auto match = std::find_if(leaving.begin(), leaving.end(), [&](const SpineEdge& eo) {
          return eo.label.aux_name == fused.label.aux_name &&
                 eo.label.index == fused.label.index + 1;
        });
        if (match == leaving.end()) {
          fail(Errc::invalid_grammar, "spine reduction: no continuation for " + fused.label.aux_name);
        }
        fused.dst = match->dst;
        fused.label.segment = splice_segments(fused.label.segment, match->label.segment);
        // carry the last constituent's index so later eliminations still
        // find their continuations; the final renumbering restores 0..n-1
        fused.label.index = match->label.index;
      }
      next.push_back(std::move(fused));
    }
    edges = std::move(next);
    renumber(edges);  // later eliminations rely on consecutive indices
  }

  std::sort(edges.begin(), edges.end(), edge_less);

  SpineGraph sg;
  sg.edges = std::move(edges);
  for (const SpineEdge& e : sg.edges) {
    sg.vertices.insert(e.src);
    sg.vertices.insert(e.dst);
  }
  return sg;
}

bool trace_wfc(const SpineGraph& sg, const std::vector<SpineEdge>& walk) {
  if (walk.empty()) fail(Errc::not_a_walk, "empty walk");
  for (const SpineEdge& e : walk) {
    bool found = std::any_of(sg.edges.begin(), sg.edges.end(),
                             [&](const SpineEdge& ge) { return same_edge(ge, e); });
    if (!found) fail(Errc::not_a_walk, "edge not in graph: " + e.label.aux_name + ":" +
                                           std::to_string(e.label.index));
  }
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
    if (walk[i].dst != walk[i + 1].src) fail(Errc::not_a_walk, "walk is not connected");
  }

  // (vertex, aux, index) triples with an outgoing successor edge; a frame can
  // be popped in place only when its successor leaves nowhere from here
  std::set<std::tuple<Symbol, std::string, std::size_t>> successor_at;
  for (const SpineEdge& e : sg.edges) {
    if (e.label.index > 0) successor_at.insert({e.src, e.label.aux_name, e.label.index});
  }

  using Frame = std::pair<std::string, std::size_t>;
  using State = std::pair<std::size_t, std::vector<Frame>>;
  std::set<State> seen;

  // The three moves of the stack automaton:
  //   push an index-0 edge label and traverse it,
  //   pop <beta,j> / push <beta,j+1> and traverse that edge,
  //   pop <beta,j> in place when no <beta,j+1> edge leaves the current vertex.
  std::function<bool(std::size_t, std::vector<Frame>&)> sim = [&](std::size_t pos,
                                                                  std::vector<Frame>& stack) -> bool {
    if (pos == walk.size() && stack.empty()) return true;
    if (!seen.insert({pos, stack}).second) return false;

    if (pos < walk.size()) {
      const SpineEdge& e = walk[pos];
      if (e.label.index == 0) {
        stack.emplace_back(e.label.aux_name, 0);
        bool ok = sim(pos + 1, stack);
        stack.pop_back();
        if (ok) return true;
      }
      if (!stack.empty() && stack.back().first == e.label.aux_name &&
          stack.back().second + 1 == e.label.index) {
        Frame saved = stack.back();
        stack.back().second = e.label.index;
        bool ok = sim(pos + 1, stack);
        stack.back() = saved;
        if (ok) return true;
      }
    }
    if (!stack.empty()) {
      Symbol here = pos == 0 ? walk[0].src : walk[pos - 1].dst;
      const Frame& top = stack.back();
      if (!successor_at.count({here, top.first, top.second + 1})) {
        Frame saved = top;
        stack.pop_back();
        bool ok = sim(pos, stack);
        stack.push_back(saved);
        if (ok) return true;
      }
    }
    return false;
  };

  std::vector<Frame> stack;
  return sim(0, stack);
}

std::vector<CycleWitness> simple_cycles(const SpineGraph& sg) {
  std::vector<DigraphEdge> plain;
  plain.reserve(sg.edges.size());
  for (const SpineEdge& e : sg.edges) plain.push_back({e.src, e.dst});

  std::vector<CycleWitness> out;
  for (const std::vector<std::size_t>& cyc : enumerate_simple_cycles(plain)) {
    CycleWitness w;
    w.vertex_sequence.push_back(sg.edges[cyc[0]].src);
    Tree acc = sg.edges[cyc[0]].label.segment;
    w.edge_sequence.push_back(sg.edges[cyc[0]].label);
    for (std::size_t k = 1; k < cyc.size(); ++k) {
      const SpineEdge& e = sg.edges[cyc[k]];
      w.vertex_sequence.push_back(e.src);
      w.edge_sequence.push_back(e.label);
      acc = splice_segments(acc, e.label.segment);
    }
    w.vertex_sequence.push_back(sg.edges[cyc.back()].dst);
    w.cycle_tree = std::move(acc);  // final slot is the foot
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

std::size_t segment_steps(const Tree& segment) { return slot_address(segment).depth(); }

// Search for any wfc whose concatenated segments equal `target`. Candidate
// walks tile the target's spine; every edge contributes at least one spine
// step, which bounds the walk length by the spine size.
bool wfc_equivalent_exists(const SpineGraph& sg, const Tree& target) {
  std::vector<NodeAddress> sp = spine(target);
  std::size_t last = sp.size() - 1;

  std::vector<SpineEdge> walk;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == last) return trace_wfc(sg, walk);
    const Symbol& here = node_at(target, sp[i])->label;
    for (const SpineEdge& e : sg.edges) {
      if (e.src != here) continue;
      std::size_t steps = segment_steps(e.label.segment);
      if (i + steps > last) continue;
      // slice of the target between spine positions i and i+steps
      NodeAddress rel;
      rel.path.assign(sp[i + steps].path.begin() + static_cast<std::ptrdiff_t>(sp[i].path.size()),
                      sp[i + steps].path.end());
      Tree slot;
      slot.label = node_at(target, sp[i + steps])->label;
      slot.foot = true;
      Tree slice = replace_at(*node_at(target, sp[i]), rel, slot);
      if (slice != e.label.segment) continue;
      walk.push_back(e);
      if (rec(i + steps)) return true;
      walk.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

std::pair<bool, std::vector<CycleWitness>> check_regular_form(const TagGrammar& g) {
  SpineGraph sg = build_spine_graph(g);
  std::vector<CycleWitness> witnesses = simple_cycles(sg);

  // A cycle tree that equals an elementary auxiliary tree is always
  // equivalent: that tree's own edge sequence pushes its index-0 label,
  // advances to the end and pops. Parallel edges make many cycles share one
  // tree, so verdicts are cached per tree.
  std::set<Tree> elementary;
  for (const auto& [name, t] : g.auxiliary) {
    if (!t.leaf()) elementary.insert(t);
  }
  std::map<Tree, bool> verdict;
  bool all_ok = true;
  for (CycleWitness& w : witnesses) {
    auto it = verdict.find(w.cycle_tree);
    if (it == verdict.end()) {
      bool eq = elementary.count(w.cycle_tree) > 0 || wfc_equivalent_exists(sg, w.cycle_tree);
      it = verdict.emplace(w.cycle_tree, eq).first;
    }
    w.wfc_equivalent = it->second;
    all_ok = all_ok && w.wfc_equivalent;
  }
  return {all_ok, std::move(witnesses)};
}

std::pair<TagGrammar, std::vector<Tree>> extend_to_regular_form(const TagGrammar& g) {
  TagGrammar cur = g;
  std::vector<Tree> added;
  std::size_t next_name = 1;
  for (int pass = 0;; ++pass) {
    auto [ok, witnesses] = check_regular_form(cur);
    if (ok) return {std::move(cur), std::move(added)};
    if (pass >= 2) {
      fail(Errc::nontermination_guard, "regular-form extension did not converge in 2 passes");
    }
    std::set<Tree> new_trees;
    for (const CycleWitness& w : witnesses) {
      if (!w.wfc_equivalent) new_trees.insert(w.cycle_tree);
    }
    for (const auto& [name, t] : cur.auxiliary) new_trees.erase(t);
    for (const Tree& t : new_trees) {
      std::string name;
      do {
        name = "ext" + std::to_string(next_name++);
      } while (cur.auxiliary.count(name) || cur.initial.count(name));
      cur.auxiliary.emplace(name, t);
      added.push_back(t);
    }
  }
}

std::string to_dot(const SpineGraph& sg) {
  std::ostringstream os;
  os << "digraph spine {\n";
  for (const Symbol& v : sg.vertices) os << "  " << v.name << ";\n";
  for (const SpineEdge& e : sg.edges) {
    os << "  " << e.src.name << " -> " << e.dst.name << " [label=\"" << e.label.aux_name << ":"
       << e.label.index << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace rftag
