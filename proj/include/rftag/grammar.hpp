#ifndef RFTAG_GRAMMAR_HPP
#define RFTAG_GRAMMAR_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rftag/tree.hpp"

namespace rftag {

// The five-tuple: terminals, non-terminals, named elementary initial trees,
// named elementary auxiliary trees, start symbol.
struct TagGrammar {
  std::set<Symbol> terminals;
  std::set<Symbol> nonterminals;
  std::map<std::string, Tree> initial;
  std::map<std::string, Tree> auxiliary;
  Symbol start = Symbol::nonterminal("S");
};

struct Violation {
  std::string tree_name;  // empty for grammar-level problems
  NodeAddress where;
  std::string message;
};

// Every violated well-formedness condition, with the offending tree and node.
// Empty result means the grammar is valid.
std::vector<Violation> validate_grammar(const TagGrammar& g);

// True when the node is a frontier non-terminal that is not a foot, i.e. a
// substitution node.
bool is_substitution_node(const Tree& node);

// Root-to-foot addresses, inclusive. Throws not_an_auxiliary_tree.
std::vector<NodeAddress> spine(const Tree& aux);

// A proper auxiliary tree repeats its root label on the spine only at the
// foot.
bool is_proper(const Tree& aux);

// Splits the spine at every interior occurrence of the root label. Splicing
// the returned proper auxiliary trees back together (each at the previous
// one's foot) reconstructs the input exactly.
std::vector<Tree> proper_segments(const Tree& aux);

// Adjunction: the subtree at `at` is excised, `aux` is inserted there, and
// the excised subtree replaces the foot of `aux`. Inputs are not modified.
Tree adjoin(const Tree& host, const NodeAddress& at, const Tree& aux);

// Substitution of an initial tree at a frontier non-terminal node.
Tree substitute(const Tree& host, const NodeAddress& at, const Tree& init);

// Relabeling onto a refined alphabet; total on the refined symbols.
struct ProjectionMap {
  std::map<Symbol, Symbol> to_base;
};

Tree project_labels(const Tree& t, const ProjectionMap& m);

// Returns an equivalent grammar without improper elementary auxiliary trees,
// together with the projection taking its refined labels back to the input
// alphabet. Every auxiliary tree is duplicated with root/foot index 0 or 1;
// interior spine nodes carrying the root's base symbol get the opposite
// index, everything else index 0.
std::pair<TagGrammar, ProjectionMap> eliminate_improper(const TagGrammar& g);

// Completed tree: footless, root labeled with the start symbol, and no
// non-terminal left on the frontier (epsilon leaves are fine).
bool is_completed_tree(const TagGrammar& g, const Tree& t);

}  // namespace rftag

#endif
