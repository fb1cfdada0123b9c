#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "canonseq/formula.hpp"

namespace canonseq {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

// Grammar:
//   formula ::= "p" INT | NAME | NAME "(" formula ("," formula)* ")"
//   sequent ::= [formula ("," formula)*] "=>" [formula]
// Whitespace is insignificant. A few Unicode connective aliases are
// accepted on input; the printer only ever emits the ASCII names.
Formula parse_formula(std::string_view text, const Signature& sig);
Sequent parse_sequent(std::string_view text, const Signature& sig);

// One sequent per non-blank line; '#' starts a comment.
std::vector<Sequent> parse_sequent_lines(std::string_view text,
                                         const Signature& sig);

// Alias normalization used by both the formula parser and the system DSL.
std::string normalize_connective_name(const std::string& token);

}  // namespace canonseq
