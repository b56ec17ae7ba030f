#ifndef RFTAG_TEXT_HPP
#define RFTAG_TEXT_HPP

#include <string>

#include "rftag/cfg_types.hpp"
#include "rftag/grammar.hpp"

namespace rftag {

// Grammar file format, line oriented:
//
//   # comment
//   start: S
//   init alpha: (S a)
//   aux beta: (S a S*)
//
// Tree names are optional; unnamed trees get alpha1../beta1.. in file order.
// Non-terminals match [A-Z][A-Za-z0-9_]*, terminals [a-z][A-Za-z0-9_]* or
// <eps>. A '*' suffix on a non-terminal leaf marks the foot, a '@' prefix on
// a terminal leaf marks the anchor. Frontier non-terminals without '*' are
// substitution nodes.
TagGrammar parse_grammar_file(const std::string& text);

std::string render_grammar(const TagGrammar& g);

// Single tree in the same syntax, e.g. "(S a (S a S*))".
Tree parse_tree_text(const std::string& text);

// CFG file format: one production per line, "LHS -> sym sym ..." or
// "LHS -> <eps>"; '#' comments; optional "start: X" header, otherwise the
// first production's left-hand side is the start symbol.
Cfg parse_cfg_file(const std::string& text);

std::string render_cfg(const Cfg& c);

}  // namespace rftag

#endif
