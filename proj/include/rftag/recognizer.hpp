#ifndef RFTAG_RECOGNIZER_HPP
#define RFTAG_RECOGNIZER_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "rftag/automaton.hpp"
#include "rftag/grammar.hpp"

namespace rftag {

// Input sentence; plain terminals only, never epsilon.
struct TokenString {
  std::vector<Symbol> tokens;
};

// Context-free grammar over automaton states deriving exactly the yields of
// the accepted trees, binarized with fresh states. Index 0..state_names-1.
struct YieldGrammar {
  std::vector<std::string> state_names;
  std::vector<int> start_states;                    // the automaton's finals
  std::vector<std::array<int, 3>> binary;           // a -> b c
  std::vector<std::pair<int, int>> unary;           // a -> b
  std::map<std::string, std::vector<int>> terminal; // token -> producing states
  std::vector<int> epsilon_states;                  // a -> epsilon
};

YieldGrammar derive_yield_cfg(const TreeAutomaton& a);

struct Chart {
  std::size_t n = 0;
  // only nonempty cells, keyed (i, j) with 0 <= i < j <= n
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> cells;
};

// Compiled form reusable across sentences; CKY per call, cubic in the input
// length for a fixed grammar.
class Recognizer {
 public:
  explicit Recognizer(const TagGrammar& g, const CompileOptions& opts = {});

  bool recognize(const TokenString& w) const;
  Chart chart(const TokenString& w) const;

  const TreeAutomaton& automaton() const { return automaton_; }
  const YieldGrammar& grammar() const { return yield_; }

 private:
  std::vector<int> token_states(const Symbol& tok) const;

  std::set<Symbol> terminals_;
  TreeAutomaton automaton_;
  YieldGrammar yield_;
  // derived tables
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> unit_pre_;  // transitively closed unit ancestors
  std::vector<char> nullable_;
  std::vector<std::array<int, 3>> cky_binary_;  // binary rules incl. nothing else
};

// One-shot convenience: compile and recognize.
bool recognize(const TagGrammar& g, const TokenString& w);

}  // namespace rftag

#endif
