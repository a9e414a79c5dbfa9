// Concrete syntax: tokenizer and recursive-descent parser.
//
//   program  := (clause | query)*
//   clause   := atom (":-" goal)? "."
//   query    := "?-" goal "."
//   goal     := pargoal ("&" pargoal)*          sequential, left-assoc
//   pargoal  := unit ("," unit)*                parallel, binds tighter
//   unit     := "forall" VAR "in" term "do" unit
//             | "exists" VAR "do" unit
//             | "(" goal ")"
//             | term (relation term)?           relation: is = < =< > >= =:= =\=
//   term     := additive arithmetic over primaries (+ - * // mod, unary -)
//   primary  := VAR | INT | STRING | ATOM | ATOM "(" term ("," term)* ")" | list | "(" term ")"
//   list     := "[" "]" | "[" term (".." term | ("," term)* ("|" term)?) "]"
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "forlog/ast.hpp"

namespace forlog {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& found() const { return found_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::string found_;
};

enum class TokenKind { Atom, Var, Int, Str, Keyword, Punct, End };

struct Token {
  TokenKind kind;
  std::string text;  // for Str: the decoded contents
  int line = 1;
  int column = 1;
  std::size_t offset = 0;  // byte offset of the token's first character
  std::size_t end = 0;     // byte offset one past the last character

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }

  friend bool operator==(const Token& a, const Token& b) { return a.kind == b.kind && a.text == b.text; }
};

/// Always ends with an End token. Throws ParseError on lexical errors.
std::vector<Token> tokenize(std::string_view source);

struct ReaderOptions {
  /// Accept `$`-prefixed names, which are reserved for generated predicates.
  bool allow_reserved = false;
};

struct SourceUnit {
  std::string origin;
  std::vector<Clause> clauses;
  std::vector<Goal> queries;
};

SourceUnit parse_program(const std::vector<Token>& tokens, const ReaderOptions& options = {}, std::string origin = {});
SourceUnit parse_program(std::string_view source, const ReaderOptions& options = {}, std::string origin = {});

/// A single goal, optionally followed by `.`, closed existentially over its
/// free variables (first occurrence outermost).
Goal parse_goal(std::string_view text, const ReaderOptions& options = {});

/// Parses one term terminated by `.` from the start of `text`.
/// Returns nullopt when `text` holds only whitespace and comments, and sets
/// `consumed` to the number of bytes used, including the final dot.
std::optional<Term> read_term(std::string_view text, std::size_t& consumed);

}  // namespace forlog
