#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "turtlesyn/model.hpp"

namespace tsyn {

// Positions are 1-based; `line`/`column` point at the offending token, or one
// past the end of the input for errors detected at EOF.
struct ParseError {
  int line = 1;
  int column = 1;
  std::string message;
};

// Grammar: a program is a sequence of statements.
//   stmt     := "forward" | "back" | "left" | "right"
//             | "setpencolor" <color>
//             | "repeat" <count> "{" leaf+ "}"
// Repeat counts must lie in [2, 5] and repeat bodies cannot nest another
// repeat. Whitespace (spaces, tabs, newlines) separates tokens.
std::variant<Program, ParseError> parse(std::string_view text);

// Canonical layout: one statement per line, repeat bodies indented two
// spaces, closing brace on its own line, no trailing newline.
std::string print(const Program& code);

}  // namespace tsyn
