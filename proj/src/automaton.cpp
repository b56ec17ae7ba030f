#include "rftag/automaton.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "rftag/error.hpp"
#include "rftag/spine_graph.hpp"

namespace rftag {

std::set<std::string> run_automaton(const TreeAutomaton& a, const Tree& t) {
  if (!a.alphabet.count(t.label)) {
    fail(Errc::unknown_symbol, "symbol '" + t.label.name + "' not in the automaton alphabet");
  }
  std::vector<std::set<std::string>> kid_states;
  kid_states.reserve(t.children.size());
  for (const Tree& c : t.children) kid_states.push_back(run_automaton(a, c));

  std::set<std::string> out;
  for (const auto& [key, results] : a.transitions) {
    if (key.first != t.label || key.second.size() != t.children.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < key.second.size() && match; ++i) {
      match = kid_states[i].count(key.second[i]) > 0;
    }
    if (match) out.insert(results.begin(), results.end());
  }
  return out;
}

bool accepts(const TreeAutomaton& a, const Tree& t) {
  std::set<std::string> states = run_automaton(a, t);
  return std::any_of(states.begin(), states.end(),
                     [&](const std::string& q) { return a.finals.count(q) > 0; });
}

namespace {

struct Frame {
  std::string elem;
  NodeAddress site;
  auto operator<=>(const Frame&) const = default;
};

// A node of an elementary tree plus the stack of interior-spine adjunctions
// pending below it. frames.front() is the innermost pending host; it is
// resumed when this elementary tree's root completes.
struct CState {
  std::string elem;
  NodeAddress node;
  std::vector<Frame> frames;
  auto operator<=>(const CState&) const = default;

  std::string id() const {
    std::string s = elem + "." + node.to_string();
    for (const Frame& f : frames) s += "~" + f.elem + "." + f.site.to_string();
    return s;
  }
};

struct ElemInfo {
  std::string name;
  const Tree* tree = nullptr;
  bool is_aux = false;
  NodeAddress foot;
  std::set<NodeAddress> spine_set;
};

class Compiler {
 public:
  Compiler(const TagGrammar& g, const CompileOptions& opts) : g_(g), opts_(opts) {
    for (const auto& [name, t] : g.initial) {
      elems_.push_back({name, &t, false, {}, {}});
    }
    for (const auto& [name, t] : g.auxiliary) {
      ElemInfo info{name, &t, true, {}, {}};
      if (!t.leaf()) {  // single-node auxiliaries adjoin as the identity
        std::vector<NodeAddress> sp = spine(t);
        info.foot = sp.back();
        info.spine_set.insert(sp.begin(), sp.end());
        elems_.push_back(std::move(info));
      }
    }
    max_frames_ = g.nonterminals.size() + 1;
  }

  TreeAutomaton build() {
    seed_leaves();
    bool changed = true;
    while (changed) {
      changed = false;
      for (const ElemInfo& e : elems_) {
        for (const NodeAddress& n : all_addresses(*e.tree)) {
          if (node_at(*e.tree, n)->leaf()) continue;
          if (complete_node(e, n)) changed = true;
        }
      }
    }

    TreeAutomaton a;
    a.alphabet = g_.terminals;
    a.alphabet.insert(g_.nonterminals.begin(), g_.nonterminals.end());
    a.alphabet.insert(Symbol::epsilon());
    for (const CState& q : reachable_) a.states.insert(q.id());
    for (const auto& [key, outs] : transitions_) {
      auto& slot = a.transitions[{key.first, ids(key.second)}];
      for (const CState& q : outs) slot.insert(q.id());
    }
    for (const ElemInfo& e : elems_) {
      if (e.is_aux || e.tree->label != g_.start) continue;
      CState q{e.name, NodeAddress::root(), {}};
      if (reachable_.count(q)) a.finals.insert(q.id());
    }
    return a;
  }

 private:
  using TransKey = std::pair<Symbol, std::vector<CState>>;

  static std::vector<std::string> ids(const std::vector<CState>& qs) {
    std::vector<std::string> out;
    out.reserve(qs.size());
    for (const CState& q : qs) out.push_back(q.id());
    return out;
  }

  void add_state(const CState& q) {
    if (reachable_.insert(q).second && reachable_.size() > opts_.state_cap) {
      fail(Errc::state_explosion,
           "compiled state count exceeds cap (" + std::to_string(opts_.state_cap) + ")");
    }
  }

  void seed_leaves() {
    for (const ElemInfo& e : elems_) {
      for (const NodeAddress& n : all_addresses(*e.tree)) {
        const Tree* node = node_at(*e.tree, n);
        if (!node->leaf() || node->label.is_nonterminal()) continue;
        CState q{e.name, n, {}};
        add_state(q);
        transitions_[{node->label, {}}].insert(q);
      }
    }
  }

  // Enumerate child-state choices for node n of e and record the resulting
  // completion transitions. Returns true when something new appeared.
  bool complete_node(const ElemInfo& e, const NodeAddress& n) {
    const Tree* node = node_at(*e.tree, n);
    bool n_on_spine = e.is_aux && e.spine_set.count(n) > 0;

    std::vector<std::vector<CState>> cand(node->children.size());
    int spine_child = -1;
    for (std::size_t i = 0; i < node->children.size(); ++i) {
      NodeAddress c = n.child(i);
      const Tree* cn = &node->children[i];
      if (cn->leaf() && !cn->label.is_nonterminal()) {
        cand[i].push_back({e.name, c, {}});
      } else if (e.is_aux && c == e.foot) {
        spine_child = static_cast<int>(i);
        excision_candidates(node->children[i].label, cand[i]);
      } else if (cn->leaf()) {
        // substitution slot: completed initial instances with this label
        for (const ElemInfo& init : elems_) {
          if (init.is_aux || init.tree->label != cn->label) continue;
          CState q{init.name, NodeAddress::root(), {}};
          if (reachable_.count(q)) cand[i].push_back(q);
        }
      } else {
        bool child_on_spine = n_on_spine && e.spine_set.count(c) > 0;
        if (child_on_spine) spine_child = static_cast<int>(i);
        for (const CState& q : reachable_) {
          if (q.elem != e.name || q.node != c) continue;
          if (!child_on_spine && !q.frames.empty()) continue;
          cand[i].push_back(q);
        }
      }
      if (cand[i].empty()) return false;
    }

    bool changed = false;
    std::vector<CState> tuple(node->children.size());
    std::function<void(std::size_t)> product = [&](std::size_t i) {
      if (i == tuple.size()) {
        CState result{e.name, n, {}};
        if (n_on_spine && spine_child >= 0) {
          const CState& sc = tuple[static_cast<std::size_t>(spine_child)];
          if (n.child(static_cast<std::size_t>(spine_child)) == e.foot) {
            // adjunction below: push the consumed site as a pending frame
            result.frames.reserve(sc.frames.size() + 1);
            result.frames.push_back({sc.elem, sc.node});
            result.frames.insert(result.frames.end(), sc.frames.begin(), sc.frames.end());
            if (result.frames.size() > max_frames_) return;  // beyond the nesting bound
          } else {
            result.frames = sc.frames;
          }
        }
        if (n.is_root() && e.is_aux) {
          if (result.frames.empty()) return;  // spine states always carry a frame
          // the auxiliary root resumes the interrupted host node
          Frame top = result.frames.front();
          result.frames.erase(result.frames.begin());
          result = CState{top.elem, top.site, std::move(result.frames)};
        }
        auto& outs = transitions_[{node->label, tuple}];
        if (outs.insert(result).second) changed = true;
        if (!reachable_.count(result)) {
          add_state(result);
          changed = true;
        }
        return;
      }
      for (const CState& q : cand[i]) {
        tuple[i] = q;
        product(i + 1);
      }
    };
    product(0);
    return changed;
  }

  // States an auxiliary foot labeled X may consume, i.e. the possible
  // excision sources of the adjunction that put this auxiliary tree here:
  //   - a non-frontier node of an initial tree,
  //   - an off-spine non-frontier node of an auxiliary tree,
  //   - an interior spine node of an auxiliary tree, provided the host's
  //     root symbol does not repeat among the pending interior-spine hosts.
  // Root and foot adjunction never shows up here; it manifests as stacking,
  // with the stacked tree's foot consuming the same excision state.
  void excision_candidates(const Symbol& foot_label, std::vector<CState>& out) {
    for (const CState& q : reachable_) {
      const ElemInfo* h = elem_info(q.elem);
      if (!h) continue;
      const Tree* m = node_at(*h->tree, q.node);
      if (!m || m->leaf() || m->label != foot_label) continue;
      if (!h->is_aux) {
        if (q.frames.empty()) out.push_back(q);
        continue;
      }
      bool on_spine = h->spine_set.count(q.node) > 0;
      if (!on_spine) {
        if (q.frames.empty()) out.push_back(q);
        continue;
      }
      if (q.node.is_root() || q.node == h->foot) continue;  // such states never materialize
      // interior spine: pending hosts (all frames but the bottom one) must
      // not already use this root symbol
      const Symbol& host_root = h->tree->label;
      bool fresh = true;
      for (std::size_t k = 0; k + 1 < q.frames.size() && fresh; ++k) {
        const ElemInfo* fe = elem_info(q.frames[k].elem);
        fresh = !fe || fe->tree->label != host_root;
      }
      if (fresh) out.push_back(q);
    }
  }

  const ElemInfo* elem_info(const std::string& name) const {
    for (const ElemInfo& e : elems_) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

  const TagGrammar& g_;
  CompileOptions opts_;
  std::vector<ElemInfo> elems_;
  std::set<CState> reachable_;
  std::map<TransKey, std::set<CState>> transitions_;
  std::size_t max_frames_ = 0;
};

}  // namespace

TreeAutomaton compile_regular_tag(const TagGrammar& g, const CompileOptions& opts) {
  auto [regular, witnesses] = check_regular_form(g);
  if (!regular) {
    fail(Errc::not_regular_form, "grammar is not in regular form; compile requires it");
  }
  return Compiler(g, opts).build();
}

std::set<Tree> enumerate_accepted(const TreeAutomaton& a, std::size_t max_nodes) {
  // table[state][size] = trees of exactly `size` nodes reaching the state
  std::map<std::string, std::map<std::size_t, std::set<Tree>>> table;

  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (const auto& [key, outs] : a.transitions) {
      const auto& [sym, qs] = key;
      if (qs.empty()) {
        if (n != 1) continue;
        Tree leaf;
        leaf.label = sym;
        for (const std::string& q : outs) table[q][1].insert(leaf);
        continue;
      }
      if (qs.size() > n - 1) continue;
      std::vector<Tree> kids(qs.size());
      std::function<void(std::size_t, std::size_t)> combos = [&](std::size_t i, std::size_t left) {
        if (i == qs.size()) {
          if (left != 0) return;
          Tree t;
          t.label = sym;
          t.children = kids;
          for (const std::string& q : outs) table[q][n].insert(t);
          return;
        }
        std::size_t min_rest = qs.size() - i - 1;
        auto it = table.find(qs[i]);
        if (it == table.end()) return;
        for (auto& [sz, trees] : it->second) {
          if (sz + min_rest > left) break;
          for (const Tree& cand : trees) {
            kids[i] = cand;
            combos(i + 1, left - sz);
          }
        }
      };
      combos(0, n - 1);
    }
  }

  std::set<Tree> accepted;
  for (const std::string& f : a.finals) {
    auto it = table.find(f);
    if (it == table.end()) continue;
    for (const auto& [sz, trees] : it->second) accepted.insert(trees.begin(), trees.end());
  }
  return accepted;
}

std::string render_automaton(const TreeAutomaton& a) {
  std::ostringstream os;
  for (const std::string& q : a.states) os << "state " << q << "\n";
  for (const std::string& q : a.finals) os << "final " << q << "\n";
  for (const auto& [key, outs] : a.transitions) {
    for (const std::string& q : outs) {
      os << "trans " << key.first.name;
      for (const std::string& c : key.second) os << ' ' << c;
      os << " -> " << q << "\n";
    }
  }
  return os.str();
}

}  // namespace rftag
