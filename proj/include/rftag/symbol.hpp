#ifndef RFTAG_SYMBOL_HPP
#define RFTAG_SYMBOL_HPP

#include <compare>
#include <string>

namespace rftag {

enum class SymbolKind { Terminal, Nonterminal, Epsilon };

// Reserved name of the empty-string leaf symbol.
inline const char* const kEpsilonName = "<eps>";

// A grammar symbol. The kind is part of the identity: a terminal "a" and a
// non-terminal "a" are different symbols (and an invalid grammar).
struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::Terminal;

  static Symbol terminal(std::string n) { return {std::move(n), SymbolKind::Terminal}; }
  static Symbol nonterminal(std::string n) { return {std::move(n), SymbolKind::Nonterminal}; }
  static Symbol epsilon() { return {kEpsilonName, SymbolKind::Epsilon}; }

  bool is_terminal() const { return kind == SymbolKind::Terminal; }
  bool is_nonterminal() const { return kind == SymbolKind::Nonterminal; }
  bool is_epsilon() const { return kind == SymbolKind::Epsilon; }

  auto operator<=>(const Symbol&) const = default;
};

}  // namespace rftag

#endif
