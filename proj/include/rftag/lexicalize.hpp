#ifndef RFTAG_LEXICALIZE_HPP
#define RFTAG_LEXICALIZE_HPP

#include <functional>
#include <set>
#include <string>

#include "rftag/cfg_types.hpp"
#include "rftag/grammar.hpp"

namespace rftag {

// Which right-hand-side position a derivation expands at each step. Leftmost
// gives the classic left-corner graph; any total deterministic selector
// works, the output is validated with the regular-form check either way.
struct ExpansionStrategy {
  std::string name;
  std::function<std::size_t(const Production&)> selector;

  static ExpansionStrategy leftmost();
  static ExpansionStrategy rightmost();
};

// Derivation graph: one edge per production with a non-empty right-hand
// side, from the head to the strategy-selected child. Epsilon productions
// point at a terminal-like epsilon sink so paths may end there.
struct LcgEdge {
  Symbol src;
  Symbol dst;
  std::size_t production;  // index into the Cfg
  std::size_t selected;    // rhs position (0 for the epsilon sink)
};

struct Lcg {
  Cfg cfg;
  std::set<Symbol> vertices;
  std::vector<LcgEdge> edges;
};

// Depth-one initial tree per production; epsilon productions become a single
// epsilon leaf. The result has no auxiliary trees.
TagGrammar cfg_to_tsg(const Cfg& c);

Lcg build_lcg(const Cfg& c, const ExpansionStrategy& s);

// Trees of the simple paths from a non-terminal to a terminal (or the
// epsilon sink): each production on the path expands only its selected
// child, all other non-terminals stay substitution nodes.
std::set<Tree> lcg_initial_trees(const Lcg& l);

// One auxiliary tree per simple cycle (every rotation), the returning
// occurrence of the start vertex becoming the foot. With lexicalize set,
// every substitution node of a cycle tree is filled with every combination
// of matching initial trees and each filled copy gets its anchor; partially
// filled copies would leave segment variants on the spine graph whose
// recombinations no elementary tree realizes.
std::set<Tree> lcg_aux_trees(const Lcg& l, bool lexicalize);

// The full construction: initial trees from simple paths, auxiliary trees
// from simple cycles; strongly equivalent to the CFG's derivation trees and
// in regular form. With lexicalized set, the input must be epsilon-free and
// without unit-production cycles, and every output tree carries an anchor.
TagGrammar cfg_to_regular_tag(const Cfg& c, const ExpansionStrategy& s, bool lexicalized);

struct ClosureLimits {
  std::size_t max_passes = 16;
  std::size_t max_trees = 20000;
};

// Repeatedly fills every substitution node of every elementary tree with
// every matching elementary initial tree until none is left. This need not
// terminate for self-feeding slots; the limits guard it and trip the
// nontermination-guard error with the cap in the message.
TagGrammar close_substitution(const TagGrammar& g, const ClosureLimits& limits = {});

}  // namespace rftag

#endif
