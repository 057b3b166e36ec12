#ifndef ADP_PARSER_HPP
#define ADP_PARSER_HPP

#include <stdexcept>
#include <string>

#include "adp/ptrs.hpp"

namespace adp {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Concrete syntax:
//   ptrs   := item+
//   item   := "(VAR" ident* ")" | "(RULES" rule* ")" | "(START" term ")"
//   rule   := term "->" "{" branch ("," branch)* "}"
//   branch := rational ":" term
//   term   := ident | ident "(" term ("," term)* ")"
//   ident  := [A-Za-z0-9_'!]+          ';' starts a comment until end of line
// Identifiers declared in a VAR block are variables, all others are function
// symbols. Exactly one RULES block is required; START is optional.
PTRS parse_ptrs(const std::string& text);

PTRS parse_ptrs_file(const std::string& path);

}  // namespace adp

#endif
