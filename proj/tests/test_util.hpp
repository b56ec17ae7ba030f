#ifndef RFTAG_TEST_UTIL_HPP
#define RFTAG_TEST_UTIL_HPP

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "rftag/grammar.hpp"
#include "rftag/lexicalize.hpp"
#include "rftag/spine_graph.hpp"
#include "rftag/text.hpp"

namespace rftag::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(RFTAG_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline TagGrammar load_grammar(const std::string& name) {
  return parse_grammar_file(slurp(fixture_path(name)));
}

inline Cfg load_cfg(const std::string& name) { return parse_cfg_file(slurp(fixture_path(name))); }

// shorthand: tree from its text form
inline Tree t(const std::string& text) { return parse_tree_text(text); }

// --- programmatic fixtures (independent of the file parser) ---

inline TagGrammar g0() {
  TagGrammar g;
  g.terminals = {Symbol::terminal("a")};
  g.nonterminals = {Symbol::nonterminal("S")};
  g.start = Symbol::nonterminal("S");
  g.initial.emplace("alpha", t("(S a)"));
  g.auxiliary.emplace("beta", t("(S a S*)"));
  return g;
}

inline TagGrammar g1() {
  TagGrammar g;
  g.terminals = {Symbol::terminal("a"), Symbol::terminal("b")};
  g.nonterminals = {Symbol::nonterminal("S"), Symbol::nonterminal("A"), Symbol::nonterminal("B")};
  g.start = Symbol::nonterminal("S");
  g.initial.emplace("alpha", t("(S (A (B b) a))"));
  g.auxiliary.emplace("beta_A", t("(A (B A* b))"));
  g.auxiliary.emplace("beta_B", t("(B (A B* a))"));
  return g;
}

// Independent CFG derivation-tree oracle: all completed derivation trees of
// height at most max_depth (a lone leaf has depth 1), rooted at the start
// symbol. Epsilon productions become a single epsilon leaf.
inline std::vector<Tree> cfg_trees_for(const Cfg& c, const Symbol& nt, std::size_t depth_left,
                                       std::map<std::pair<std::string, std::size_t>, std::vector<Tree>>& memo) {
  auto key = std::make_pair(nt.name, depth_left);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;
  std::vector<Tree> out;
  if (depth_left >= 2) {
    for (const Production& p : c.productions) {
      if (p.lhs != nt) continue;
      std::vector<std::vector<Tree>> kid_choices;
      bool dead = false;
      if (p.rhs.empty()) {
        Tree eps;
        eps.label = Symbol::epsilon();
        kid_choices.push_back({eps});
      }
      for (const Symbol& s : p.rhs) {
        if (s.is_terminal()) {
          Tree leaf;
          leaf.label = s;
          kid_choices.push_back({leaf});
        } else {
          std::vector<Tree> sub = cfg_trees_for(c, s, depth_left - 1, memo);
          if (sub.empty()) {
            dead = true;
            break;
          }
          kid_choices.push_back(std::move(sub));
        }
      }
      if (dead) continue;
      std::vector<Tree> kids(kid_choices.size());
      std::function<void(std::size_t)> combine = [&](std::size_t i) {
        if (i == kid_choices.size()) {
          Tree node;
          node.label = nt;
          node.children = kids;
          out.push_back(std::move(node));
          return;
        }
        for (const Tree& choice : kid_choices[i]) {
          kids[i] = choice;
          combine(i + 1);
        }
      };
      combine(0);
    }
  }
  memo.emplace(key, out);
  return out;
}

inline std::set<Tree> cfg_derivation_trees(const Cfg& c, std::size_t max_depth) {
  std::map<std::pair<std::string, std::size_t>, std::vector<Tree>> memo;
  std::vector<Tree> list = cfg_trees_for(c, c.start, max_depth, memo);
  return {list.begin(), list.end()};
}

// Independent wfc oracle: enumerate every walk the stack automaton can trace
// with at most max_len edges by simulating its moves directly.
inline void wfc_walks_rec(const SpineGraph& sg, const Symbol& at,
                          std::vector<std::pair<std::string, std::size_t>>& stack,
                          std::vector<std::size_t>& walk, std::size_t max_len,
                          std::set<std::vector<std::size_t>>& out) {
  if (!walk.empty() && stack.empty()) out.insert(walk);
  if (walk.size() >= max_len && stack.empty()) return;

  auto successor_leaves = [&](const Symbol& v, const std::string& aux, std::size_t idx) {
    for (const SpineEdge& e : sg.edges) {
      if (e.src == v && e.label.aux_name == aux && e.label.index == idx) return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < sg.edges.size(); ++i) {
    const SpineEdge& e = sg.edges[i];
    if (e.src != at || walk.size() >= max_len) continue;
    if (e.label.index == 0) {
      stack.emplace_back(e.label.aux_name, 0);
      walk.push_back(i);
      wfc_walks_rec(sg, e.dst, stack, walk, max_len, out);
      walk.pop_back();
      stack.pop_back();
    }
    if (!stack.empty() && stack.back().first == e.label.aux_name &&
        stack.back().second + 1 == e.label.index) {
      auto saved = stack.back();
      stack.back().second = e.label.index;
      walk.push_back(i);
      wfc_walks_rec(sg, e.dst, stack, walk, max_len, out);
      walk.pop_back();
      stack.back() = saved;
    }
  }
  if (!stack.empty() && !successor_leaves(at, stack.back().first, stack.back().second + 1)) {
    auto saved = stack.back();
    stack.pop_back();
    wfc_walks_rec(sg, at, stack, walk, max_len, out);
    stack.push_back(saved);
  }
}

inline std::set<std::vector<std::size_t>> all_wfc_walks(const SpineGraph& sg, std::size_t max_len) {
  std::set<std::vector<std::size_t>> out;
  std::set<Symbol> starts;
  for (const SpineEdge& e : sg.edges) starts.insert(e.src);
  for (const Symbol& v : starts) {
    std::vector<std::pair<std::string, std::size_t>> stack;
    std::vector<std::size_t> walk;
    wfc_walks_rec(sg, v, stack, walk, max_len, out);
  }
  return out;
}

// Concatenate a walk's segments the same way cycle trees are built.
inline Tree walk_tree(const SpineGraph& sg, const std::vector<std::size_t>& walk) {
  Tree acc = sg.edges[walk[0]].label.segment;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    acc = replace_at(acc, *find_foot(acc), sg.edges[walk[k]].label.segment);
  }
  return acc;
}

}  // namespace rftag::test

#endif
