#include "rftag/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "rftag/error.hpp"

namespace rftag {

RegularityContext make_regularity_context(const Tree& host, const NodeAddress& site, const Tree& aux) {
  auto aux_foot = find_foot(aux);
  if (!aux_foot) fail(Errc::not_an_auxiliary_tree, "adjunct has no foot node");

  RegularityContext ctx;
  ctx.host_root_label = host.label;
  ctx.aux_root_label = aux.label;
  ctx.aux_is_proper = is_proper(aux);
  for (const NodeAddress& a : spine(aux)) ctx.aux_spine_labels.insert(node_at(aux, a)->label);

  auto host_foot = find_foot(host);
  ctx.host_is_auxiliary = host_foot.has_value();
  if (ctx.host_is_auxiliary) {
    std::vector<NodeAddress> sp = spine(host);
    for (const NodeAddress& a : sp) ctx.host_spine_labels.insert(node_at(host, a)->label);
    ctx.site_on_spine = std::find(sp.begin(), sp.end(), site) != sp.end();
    ctx.site_is_root_or_foot = ctx.site_on_spine && (site.is_root() || site == *host_foot);
  }
  return ctx;
}

bool is_regular_step(const RegularityContext& ctx) {
  if (!ctx.host_is_auxiliary) return true;
  if (!ctx.site_on_spine) return true;
  if (ctx.site_is_root_or_foot) return ctx.aux_is_proper;
  // interior spine node: the host must not be adjoinable back into the
  // adjunct's spine
  return ctx.aux_spine_labels.count(ctx.host_root_label) == 0;
}

namespace {

// Interned tree pool. Structurally identical subtrees share a node id, which
// makes duplicate detection during the closure O(1) and keeps rebuilt trees
// cheap. Anchor flags are not represented; tree equality ignores them.
class Pool {
 public:
  struct Node {
    int sym;
    bool foot;
    std::vector<int> kids;
  };

  int sym_id(const Symbol& s) {
    auto it = sym_ids_.find(s);
    if (it != sym_ids_.end()) return it->second;
    int id = static_cast<int>(syms_.size());
    syms_.push_back(s);
    sym_ids_.emplace(s, id);
    return id;
  }

  const Symbol& sym(int id) const { return syms_[static_cast<std::size_t>(id)]; }
  std::size_t sym_count() const { return syms_.size(); }

  int intern(int s, bool foot, std::vector<int> kids) {
    NodeKey key{s, foot, kids};
    auto it = interned_.find(key);
    if (it != interned_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    std::uint32_t sz = 1;
    bool footed = foot;
    for (int k : kids) {
      sz += size_[static_cast<std::size_t>(k)];
      footed = footed || footed_[static_cast<std::size_t>(k)];
    }
    nodes_.push_back(Node{s, foot, std::move(key.kids)});
    size_.push_back(sz);
    footed_.push_back(footed);
    interned_.emplace(NodeKey{s, foot, nodes_.back().kids}, id);
    return id;
  }

  int from_tree(const Tree& t) {
    std::vector<int> kids;
    kids.reserve(t.children.size());
    for (const Tree& c : t.children) kids.push_back(from_tree(c));
    return intern(sym_id(t.label), t.foot, std::move(kids));
  }

  Tree to_tree(int id) const {
    const Node& n = node(id);
    Tree t;
    t.label = sym(n.sym);
    t.foot = n.foot;
    t.children.reserve(n.kids.size());
    for (int k : n.kids) t.children.push_back(to_tree(k));
    return t;
  }

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::uint32_t size(int id) const { return size_[static_cast<std::size_t>(id)]; }
  bool footed(int id) const { return footed_[static_cast<std::size_t>(id)]; }

 private:
  struct NodeKey {
    int sym;
    bool foot;
    std::vector<int> kids;

    bool operator==(const NodeKey& o) const {
      return sym == o.sym && foot == o.foot && kids == o.kids;
    }
  };
  struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
      std::size_t h = std::hash<int>()(k.sym) * 2654435761u + (k.foot ? 0x9e3779b9u : 0);
      for (int kid : k.kids) h = h * 1000003u + static_cast<std::size_t>(kid) + 1;
      return h;
    }
  };

  std::vector<Symbol> syms_;
  std::map<Symbol, int> sym_ids_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> size_;
  std::vector<char> footed_;
  std::unordered_map<NodeKey, int, NodeKeyHash> interned_;
};

struct MemberMeta {
  bool is_aux = false;
  int root_sym = -1;
  bool proper = true;
  std::vector<char> spine_syms;  // indexed by symbol id
};

class ClosureRunner {
 public:
  ClosureRunner(const TagGrammar& g, const DerivationBudget& b, bool regular)
      : grammar_(g), budget_(b), regular_(regular) {
    if (b.max_nodes == 0 || b.max_steps == 0) {
      fail(Errc::budget_exceeded, "derivation budget fields must be at least 1");
    }
    if (!validate_grammar(g).empty()) {
      fail(Errc::invalid_grammar, "enumeration requires a valid grammar");
    }
    // fix the symbol table so per-member masks have a stable width
    for (const Symbol& s : g.terminals) pool_.sym_id(s);
    for (const Symbol& s : g.nonterminals) pool_.sym_id(s);
    pool_.sym_id(Symbol::epsilon());
    eps_sym_ = pool_.sym_id(Symbol::epsilon());
    start_sym_ = pool_.sym_id(g.start);
  }

  void run() {
    for (const auto& [name, t] : grammar_.initial) seed(t);
    for (const auto& [name, t] : grammar_.auxiliary) seed(t);

    for (std::size_t i = 0; i < members_.size() && !aborted_; ++i) {
      for (std::size_t j = 0; j <= i && !aborted_; ++j) {
        try_pair(members_[i], members_[j]);
        if (i != j && !aborted_) try_pair(members_[j], members_[i]);
      }
    }
  }

  bool partial() const { return aborted_; }

  bool completed(int id) {
    if (pool_.footed(id)) return false;
    if (pool_.node(id).sym != start_sym_) return false;
    return frontier_closed(id);
  }

  const std::vector<int>& members() const { return members_; }
  const Pool& pool() const { return pool_; }
  Pool& pool() { return pool_; }

  std::vector<std::string> yield(int id) const {
    std::vector<std::string> out;
    yield_rec(id, out);
    return out;
  }

 private:
  void seed(const Tree& t) {
    if (t.node_count() > budget_.max_nodes) return;
    add(pool_.from_tree(t));
  }

  void add(int id) {
    if (member_set_.insert(id).second) members_.push_back(id);
  }

  bool count_step() {
    if (++steps_ > budget_.max_steps) {
      aborted_ = true;
      return false;
    }
    return true;
  }

  const MemberMeta& meta(int id) {
    auto it = meta_.find(id);
    if (it != meta_.end()) return it->second;
    MemberMeta m;
    m.root_sym = pool_.node(id).sym;
    m.is_aux = pool_.footed(id);
    if (m.is_aux) {
      m.spine_syms.assign(pool_.sym_count(), 0);
      int cur = id;
      int root_sym = m.root_sym;
      bool interior_repeat = false;
      bool first = true;
      while (true) {
        const Pool::Node& n = pool_.node(cur);
        m.spine_syms[static_cast<std::size_t>(n.sym)] = 1;
        if (!first && !(n.kids.empty() && n.foot) && n.sym == root_sym) interior_repeat = true;
        first = false;
        if (n.kids.empty()) break;
        int next = -1;
        for (int k : n.kids) {
          if (pool_.footed(k)) {
            next = k;
            break;
          }
        }
        if (next < 0) break;
        cur = next;
      }
      m.proper = !interior_repeat;
    }
    return meta_.emplace(id, std::move(m)).first->second;
  }

  void try_pair(int host, int other) {
    std::uint32_t result_size = pool_.size(host) + pool_.size(other) - 1;
    if (result_size > budget_.max_nodes) return;
    if (pool_.footed(other)) {
      adjoin_everywhere(host, other);
    } else {
      substitute_everywhere(host, other);
    }
  }

  // One adjunction of `aux` at each legal site of `host`; results are
  // interned and added to the worklist.
  void adjoin_everywhere(int host, int aux) {
    const MemberMeta& am = meta(aux);
    const MemberMeta& hm = meta(host);
    bool host_is_aux = hm.is_aux;
    bool clause3_ok =
        !regular_ || !host_is_aux ||
        am.spine_syms[static_cast<std::size_t>(hm.root_sym)] == 0;
    std::vector<int> variants = adjoin_variants(host, aux, am, host_is_aux,
                                                /*on_spine=*/host_is_aux,
                                                /*is_root=*/true, clause3_ok);
    for (int v : variants) {
      if (!count_step()) return;
      add(v);
    }
  }

  // note: interning can reallocate the node table, so node fields are copied
  // out before any recursive construction
  std::vector<int> adjoin_variants(int node, int aux, const MemberMeta& am, bool host_is_aux,
                                   bool on_spine, bool is_root, bool clause3_ok) {
    std::vector<int> out;
    const int sym = pool_.node(node).sym;
    const bool foot = pool_.node(node).foot;
    const std::vector<int> kids = pool_.node(node).kids;
    bool is_foot_leaf = kids.empty() && foot;
    bool is_slot = kids.empty() && !foot && pool_.sym(sym).is_nonterminal();
    if (sym == am.root_sym && !is_slot) {
      bool ok = true;
      if (regular_ && host_is_aux && on_spine) {
        ok = (is_root || is_foot_leaf) ? am.proper : clause3_ok;
      }
      if (ok) out.push_back(replace_foot(aux, node));
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      bool kid_on_spine = on_spine && pool_.footed(kids[i]);
      std::vector<int> kid_vars =
          adjoin_variants(kids[i], aux, am, host_is_aux, kid_on_spine, false, clause3_ok);
      for (int kv : kid_vars) {
        std::vector<int> rebuilt = kids;
        rebuilt[i] = kv;
        out.push_back(pool_.intern(sym, foot, std::move(rebuilt)));
      }
    }
    return out;
  }

  int replace_foot(int node, int sub) {
    const int sym = pool_.node(node).sym;
    const bool foot = pool_.node(node).foot;
    std::vector<int> kids = pool_.node(node).kids;
    if (kids.empty() && foot) return sub;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (pool_.footed(kids[i])) {
        kids[i] = replace_foot(kids[i], sub);
        break;
      }
    }
    return pool_.intern(sym, foot, std::move(kids));
  }

  void substitute_everywhere(int host, int init) {
    int root_sym = pool_.node(init).sym;
    if (!pool_.sym(root_sym).is_nonterminal()) return;
    std::vector<int> variants = subst_variants(host, init, root_sym);
    for (int v : variants) {
      if (!count_step()) return;
      add(v);
    }
  }

  std::vector<int> subst_variants(int node, int init, int init_sym) {
    std::vector<int> out;
    const int sym = pool_.node(node).sym;
    const bool foot = pool_.node(node).foot;
    const std::vector<int> kids = pool_.node(node).kids;
    if (kids.empty()) {
      if (!foot && sym == init_sym) out.push_back(init);
      return out;
    }
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (int kv : subst_variants(kids[i], init, init_sym)) {
        std::vector<int> rebuilt = kids;
        rebuilt[i] = kv;
        out.push_back(pool_.intern(sym, foot, std::move(rebuilt)));
      }
    }
    return out;
  }

  bool frontier_closed(int id) {
    const Pool::Node& n = pool_.node(id);
    if (n.kids.empty()) {
      return !pool_.sym(n.sym).is_nonterminal();
    }
    for (int k : n.kids) {
      if (!frontier_closed(k)) return false;
    }
    return true;
  }

  void yield_rec(int id, std::vector<std::string>& out) const {
    const Pool::Node& n = pool_.node(id);
    if (n.kids.empty()) {
      if (n.sym != eps_sym_) out.push_back(pool_.sym(n.sym).name);
      return;
    }
    for (int k : n.kids) yield_rec(k, out);
  }

  const TagGrammar& grammar_;
  DerivationBudget budget_;
  bool regular_;
  Pool pool_;
  std::vector<int> members_;
  std::unordered_set<int> member_set_;
  std::unordered_map<int, MemberMeta> meta_;
  std::uint64_t steps_ = 0;
  bool aborted_ = false;
  int eps_sym_ = -1;
  int start_sym_ = -1;
};

Enumeration run_enumeration(const TagGrammar& g, const DerivationBudget& b, bool completed_only,
                            bool regular) {
  ClosureRunner runner(g, b, regular);
  runner.run();
  Enumeration out;
  out.partial = runner.partial();
  for (int id : runner.members()) {
    if (completed_only && !runner.completed(id)) continue;
    out.trees.insert(runner.pool().to_tree(id));
  }
  return out;
}

}  // namespace

Enumeration enumerate_derived(const TagGrammar& g, const DerivationBudget& b, bool completed_only) {
  return run_enumeration(g, b, completed_only, /*regular=*/false);
}

Enumeration enumerate_regular(const TagGrammar& g, const DerivationBudget& b, bool completed_only) {
  return run_enumeration(g, b, completed_only, /*regular=*/true);
}

Derivable is_derivable(const TagGrammar& g, const Tree& t, bool regular_only, const DerivationBudget& b) {
  std::size_t needed = t.node_count();
  if (needed > b.max_nodes) return Derivable::No;  // nothing that size fits the budget
  DerivationBudget capped = b;
  // operations strictly grow node counts, so intermediates never need to be
  // larger than the query tree
  capped.max_nodes = needed;
  Enumeration e = run_enumeration(g, capped, /*completed_only=*/false, regular_only);
  if (e.trees.count(t)) return Derivable::Yes;
  return e.partial ? Derivable::Unknown : Derivable::No;
}

LanguageSample sample_language(const TagGrammar& g, const DerivationBudget& b) {
  ClosureRunner runner(g, b, /*regular=*/false);
  runner.run();
  LanguageSample out;
  out.partial = runner.partial();
  for (int id : runner.members()) {
    if (runner.completed(id)) out.strings.insert(runner.yield(id));
  }
  return out;
}

}  // namespace rftag
