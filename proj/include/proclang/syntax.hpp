#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proclang/process.hpp"

namespace proclang {

/// Raised on malformed input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::set<std::string> expected, const std::string& found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::set<std::string> expected_;
};

// Surface grammar (`--` starts a comment):
//   P    ::= "0" | "ok" | OUT | JOIN | "(nu" name {"," name} ")" P | P "|" P
//          | "if" T "=" T "then" P ["else" P] | "!" P | "(" P ")"
//   OUT  ::= [T] "<" T {"," T} ">" ["." P]
//   JOIN ::= ATOM ("." P | ">>" P) | "(" ATOM ("|" ATOM)+ ")" ">>" P
//   ATOM ::= [T] "(" PAT {"," PAT} ")"
//   T    ::= name | T "*" T | "(" T ")"
//   PAT  ::= name | "#" name | PAT "*" PAT | "(" PAT ")"
// `*` binds tightest, then the prefixes, then `|` (left-associative).
Process parse_process(std::string_view text);
Term parse_term(std::string_view text);
Pattern parse_pattern(std::string_view text);
/// Comma-separated sequences, used by the `match` subcommand.
std::vector<Term> parse_term_list(std::string_view text);
std::vector<Pattern> parse_pattern_list(std::string_view text);

using NameRenderer = std::function<std::string(const Name&)>;

std::string print(const Term& t);
std::string print(const Pattern& p);
std::string print(const Process& p);
std::string print(const Process& p, const NameRenderer& render);

}  // namespace proclang
