#ifndef RFTAG_ERROR_HPP
#define RFTAG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rftag {

enum class Errc {
  label_mismatch,
  illegal_site,
  not_an_auxiliary_tree,
  not_an_initial_tree,
  invalid_address,
  unmapped_label,
  invalid_grammar,
  not_a_walk,
  unknown_symbol,
  unknown_token,
  not_regular_form,
  state_explosion,
  budget_exceeded,
  invalid_cfg,
  not_lexicalizable,
  nontermination_guard,
  parse_error,
  usage_error,
  io_error,
};

const char* errc_name(Errc c);

class TagError : public std::runtime_error {
 public:
  TagError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw TagError(code, msg);
}

}  // namespace rftag

#endif
