#ifndef RFTAG_AUTOMATON_HPP
#define RFTAG_AUTOMATON_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rftag/grammar.hpp"

namespace rftag {

// Bottom-up nondeterministic finite-state tree automaton. The transition
// function is a finite map from (symbol, child-state sequence) to result
// states; leaves use the empty sequence.
struct TreeAutomaton {
  std::set<Symbol> alphabet;
  std::set<std::string> states;
  std::set<std::string> finals;
  std::map<std::pair<Symbol, std::vector<std::string>>, std::set<std::string>> transitions;
};

// The induced state-set function on trees.
std::set<std::string> run_automaton(const TreeAutomaton& a, const Tree& t);

bool accepts(const TreeAutomaton& a, const Tree& t);

struct CompileOptions {
  std::size_t state_cap = 100000;
};

// Compiles a regular-form TAG into an automaton accepting exactly its
// completed derivable trees (checked against the derivation oracle at
// bounded size). States pair a node of an elementary tree with a stack of
// pending interior-spine adjunctions; root and foot adjunction are handled
// as substitution-style stacking and need no stack growth.
TreeAutomaton compile_regular_tag(const TagGrammar& g, const CompileOptions& opts = {});

// All accepted trees with at most max_nodes nodes.
std::set<Tree> enumerate_accepted(const TreeAutomaton& a, std::size_t max_nodes);

// Line-oriented text form: "state q", "final q", "trans sym q ... -> q".
std::string render_automaton(const TreeAutomaton& a);

}  // namespace rftag

#endif
