#ifndef RFTAG_ORACLE_HPP
#define RFTAG_ORACLE_HPP

#include <cstdint>
#include <set>

#include "rftag/grammar.hpp"

namespace rftag {

struct DerivationBudget {
  std::size_t max_nodes = 12;      // cap on derived-tree node count
  std::uint64_t max_steps = 1000000;  // cap on performed operations before the closure gives up
};

struct Enumeration {
  std::set<Tree> trees;
  bool partial = false;  // true when max_steps ran out before the fixpoint
};

// Everything the regular-adjunction test needs to know about one step.
struct RegularityContext {
  bool host_is_auxiliary = false;
  bool site_on_spine = false;
  bool site_is_root_or_foot = false;
  Symbol host_root_label;
  std::set<Symbol> host_spine_labels;
  Symbol aux_root_label;
  bool aux_is_proper = false;
  std::set<Symbol> aux_spine_labels;
};

RegularityContext make_regularity_context(const Tree& host, const NodeAddress& site, const Tree& aux);

// Regular adjunction: into initial trees and off-spine nodes freely; at the
// root or foot of an auxiliary tree only for proper adjuncts; at interior
// spine nodes only when the host cannot adjoin back into the adjunct's
// spine, which for pure TAGs reduces to the host's root label not occurring
// on the adjunct's spine.
bool is_regular_step(const RegularityContext& ctx);

// All derivable trees (initial and auxiliary, with or without substitution
// nodes) up to the node budget; with completed_only, just the completed
// initial trees. Fixpoint over the adjoin/substitute closure.
Enumeration enumerate_derived(const TagGrammar& g, const DerivationBudget& b, bool completed_only);

// Same closure with every adjunction step restricted to regular adjunction.
Enumeration enumerate_regular(const TagGrammar& g, const DerivationBudget& b, bool completed_only);

enum class Derivable { No, Yes, Unknown };

// Membership in the bounded enumeration. Operations only grow trees, so the
// node budget is capped at t's own size without changing the answer. Unknown
// is reported when the step budget ran out first.
Derivable is_derivable(const TagGrammar& g, const Tree& t, bool regular_only, const DerivationBudget& b);

struct LanguageSample {
  std::set<std::vector<std::string>> strings;
  bool partial = false;
};

// Yields of the completed trees in the bounded enumeration.
LanguageSample sample_language(const TagGrammar& g, const DerivationBudget& b);

}  // namespace rftag

#endif
