#include "rftag/error.hpp"

namespace rftag {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::label_mismatch: return "label-mismatch";
    case Errc::illegal_site: return "illegal-site";
    case Errc::not_an_auxiliary_tree: return "not-an-auxiliary-tree";
    case Errc::not_an_initial_tree: return "not-an-initial-tree";
    case Errc::invalid_address: return "invalid-address";
    case Errc::unmapped_label: return "unmapped-label";
    case Errc::invalid_grammar: return "invalid-grammar";
    case Errc::not_a_walk: return "not-a-walk";
    case Errc::unknown_symbol: return "unknown-symbol";
    case Errc::unknown_token: return "unknown-token";
    case Errc::not_regular_form: return "not-regular-form";
    case Errc::state_explosion: return "state-explosion";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::invalid_cfg: return "invalid-cfg";
    case Errc::not_lexicalizable: return "not-lexicalizable";
    case Errc::nontermination_guard: return "nontermination-guard";
    case Errc::parse_error: return "parse-error";
    case Errc::usage_error: return "usage-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown-error";
}

}  // namespace rftag
