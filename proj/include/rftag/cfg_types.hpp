#ifndef RFTAG_CFG_TYPES_HPP
#define RFTAG_CFG_TYPES_HPP

#include <set>
#include <string>
#include <vector>

#include "rftag/symbol.hpp"

namespace rftag {

// Context-free production; an empty right-hand side is an epsilon production.
struct Production {
  Symbol lhs;
  std::vector<Symbol> rhs;

  auto operator<=>(const Production&) const = default;
};

struct Cfg {
  std::set<Symbol> terminals;
  std::set<Symbol> nonterminals;
  Symbol start = Symbol::nonterminal("S");
  std::vector<Production> productions;
};

// Empty result means the CFG is well formed.
std::vector<std::string> validate_cfg(const Cfg& c);

}  // namespace rftag

#endif
