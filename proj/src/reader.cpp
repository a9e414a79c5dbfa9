#include "forlog/reader.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>

namespace forlog {

namespace {

std::string describe(int line, int column, const std::string& message, const std::string& found) {
  std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  if (!found.empty()) out += " (found " + found + ")";
  return out;
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 6> kKeywords = {"forall", "in", "do", "exists", "is", "mod"};

// Longest first so that e.g. `=:=` wins over `=`.
constexpr std::array<std::string_view, 22> kPunct = {"=:=", "=\\=", ":-", "?-", "..", "//", "=<", ">=", ">", ".", ",",
                                                     "&",   "(",    ")",  "[",  "]",  "|",  "+",  "-",  "*", "=",
                                                     "<"};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_layout();
      Token t;
      t.line = line_;
      t.column = column_;
      t.offset = pos_;
      if (pos_ >= src_.size()) {
        t.kind = TokenKind::End;
        t.end = pos_;
        out.push_back(std::move(t));
        return out;
      }
      lex_one(t);
      t.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

  void advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;
    }
  }

  void skip_layout() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  [[noreturn]] void fail(int line, int column, const std::string& message, const std::string& found) const {
    throw ParseError(line, column, message, found);
  }

  void lex_one(Token& t) {
    char c = peek();
    if (std::islower(static_cast<unsigned char>(c)) || (c == '$' && ident_char(peek(1)))) {
      std::size_t start = pos_;
      advance();
      while (ident_char(peek())) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      bool kw = std::find(kKeywords.begin(), kKeywords.end(), t.text) != kKeywords.end();
      t.kind = kw ? TokenKind::Keyword : TokenKind::Atom;
      return;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (ident_char(peek())) advance();
      t.kind = TokenKind::Var;
      t.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      t.kind = TokenKind::Int;
      t.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (c == '"' || c == '\'') {
      lex_string(t, c);
      return;
    }
    for (auto p : kPunct) {
      if (src_.substr(pos_, p.size()) == p) {
        for (std::size_t i = 0; i < p.size(); ++i) advance();
        t.kind = TokenKind::Punct;
        t.text = std::string(p);
        return;
      }
    }
    std::size_t len = 1;
    auto lead = static_cast<unsigned char>(c);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    fail(t.line, t.column, "illegal character", "'" + std::string(src_.substr(pos_, len)) + "'");
  }

  void lex_string(Token& t, char quote) {
    advance();
    std::string text;
    for (;;) {
      if (pos_ >= src_.size()) fail(t.line, t.column, "unterminated string", "end of input");
      char c = peek();
      advance();
      if (c == quote) break;
      if (c == '\n') fail(t.line, t.column, "unterminated string", "end of line");
      if (c == '\\') {
        if (pos_ >= src_.size()) fail(t.line, t.column, "unterminated string", "end of input");
        char e = peek();
        advance();
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case '\\': text += '\\'; break;
          case '"': text += '"'; break;
          case '\'': text += '\''; break;
          default: fail(line_, column_ - 1, "unknown escape sequence", std::string("\\") + e);
        }
        continue;
      }
      text += c;
    }
    t.kind = TokenKind::Str;
    t.text = std::move(text);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_relation_token(const Token& t) {
  if (t.keyword("is")) return true;
  static constexpr std::array<std::string_view, 7> rel = {"=", "<", "=<", ">", ">=", "=:=", "=\\="};
  return t.kind == TokenKind::Punct && std::find(rel.begin(), rel.end(), t.text) != rel.end();
}

std::string found_text(const Token& t) {
  switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Str: return "string \"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const ReaderOptions& options) : toks_(tokens), options_(options) {}

  SourceUnit program(std::string origin) {
    SourceUnit unit;
    unit.origin = std::move(origin);
    while (!at_end()) {
      vars_.clear();
      if (peek().punct("?-")) {
        next();
        Goal g = goal();
        expect_punct(".", "expected '.' after query");
        unit.queries.push_back(close_query(g));
      } else {
        unit.clauses.push_back(clause());
      }
    }
    return unit;
  }

  Goal single_goal() {
    Goal g = goal();
    if (peek().punct(".")) next();
    if (!at_end()) error(peek(), "expected end of goal");
    return close_query(g);
  }

  // Parses `term .` and returns the term; nullopt on empty input.
  std::optional<Term> dotted_term(std::size_t& consumed) {
    if (at_end()) {
      consumed = peek().offset;
      return std::nullopt;
    }
    Term t = term();
    const Token& dot = peek();
    expect_punct(".", "expected '.' after term");
    consumed = dot.end;
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  [[noreturn]] void error(const Token& t, const std::string& message) const {
    throw ParseError(t.line, t.column, message, found_text(t));
  }

  void expect_punct(std::string_view p, const std::string& message) {
    if (!peek().punct(p)) error(peek(), message);
    next();
  }

  Clause clause() {
    const Token& start = peek();
    Goal head_goal = goal();
    if (!head_goal.is<CallGoal>()) error(start, "goal in clause head position");
    Term head = head_goal.as<CallGoal>().atom;
    Goal body;
    if (peek().punct(":-")) {
      next();
      body = goal();
    }
    expect_punct(".", "expected '.' at end of clause");
    return Clause{std::move(head), std::move(body)};
  }

  Goal goal() {
    Goal g = par_goal();
    while (peek().punct("&")) {
      next();
      g = Goal::seq_and(std::move(g), par_goal());
    }
    return g;
  }

  Goal par_goal() {
    Goal g = unit();
    while (peek().punct(",")) {
      next();
      g = Goal::par_and(std::move(g), unit());
    }
    return g;
  }

  Goal unit() {
    const Token& t = peek();
    if (t.keyword("forall")) {
      next();
      const Token& v = peek();
      if (v.kind != TokenKind::Var || v.text == "_") error(v, "expected loop variable after 'forall'");
      next();
      if (!peek().keyword("in")) error(peek(), "expected 'in'");
      next();
      Term list = term();
      if (!peek().keyword("do")) error(peek(), "expected 'do'");
      next();
      Var binder{v.text, fresh_var_id()};
      binders_.push_back(binder);
      Goal body = unit();
      binders_.pop_back();
      return Goal::forall(std::move(binder), std::move(list), std::move(body));
    }
    if (t.keyword("exists")) {
      next();
      const Token& v = peek();
      if (v.kind != TokenKind::Var || v.text == "_") error(v, "expected variable after 'exists'");
      next();
      if (!peek().keyword("do")) error(peek(), "expected 'do'");
      next();
      Var binder{v.text, fresh_var_id()};
      binders_.push_back(binder);
      Goal body = unit();
      binders_.pop_back();
      return Goal::exists(std::move(binder), std::move(body));
    }
    if (t.punct("(")) {
      next();
      Goal g = goal();
      expect_punct(")", "expected ')'");
      return g;
    }
    Term lhs = term();
    if (is_relation_token(peek())) {
      std::string op = next().text;
      Term rhs = term();
      return Goal::call(Term::compound(op, {std::move(lhs), std::move(rhs)}));
    }
    if (auto* a = lhs.get_if<Atom>(); a && a->name == "true") return Goal::truth();
    if (!lhs.is_callable() || lhs.is_nil() || lhs.is_cons()) error(t, "expected a goal");
    return Goal::call(std::move(lhs));
  }

  Term term() {
    Term l = mul_term();
    while (peek().punct("+") || peek().punct("-")) {
      std::string op = next().text;
      l = Term::compound(op, {std::move(l), mul_term()});
    }
    return l;
  }

  Term mul_term() {
    Term l = unary_term();
    while (peek().punct("*") || peek().punct("//") || peek().keyword("mod")) {
      std::string op = next().text;
      l = Term::compound(op, {std::move(l), unary_term()});
    }
    return l;
  }

  Term unary_term() {
    if (peek().punct("-")) {
      next();
      if (peek().kind == TokenKind::Int) return Term::integer(-Integer(next().text));
      return Term::compound("-", {unary_term()});
    }
    return primary();
  }

  Term primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Var: next(); return variable(t.text);
      case TokenKind::Int: next(); return Term::integer(Integer(t.text));
      case TokenKind::Str: next(); return Term::string(t.text);
      case TokenKind::Atom: {
        if (t.text[0] == '$' && !options_.allow_reserved) error(t, "names starting with '$' are reserved");
        next();
        if (!peek().punct("(")) return Term::atom(t.text);
        next();
        std::vector<Term> args{term()};
        while (peek().punct(",")) {
          next();
          args.push_back(term());
        }
        expect_punct(")", "expected ',' or ')' in argument list");
        return Term::compound(t.text, std::move(args));
      }
      case TokenKind::Punct:
        if (t.punct("[")) return list();
        if (t.punct("(")) {
          next();
          Term inner = term();
          expect_punct(")", "expected ')'");
          return inner;
        }
        break;
      default: break;
    }
    error(t, "expected a term");
  }

  Term list() {
    next();  // [
    if (peek().punct("]")) {
      next();
      return Term::nil();
    }
    Term first = term();
    if (peek().punct("..")) {
      next();
      Term hi = term();
      if (peek().punct("|")) error(peek(), "a range cannot have a tail");
      expect_punct("]", "expected ']' after range");
      return Term::range(std::move(first), std::move(hi));
    }
    std::vector<Term> items{std::move(first)};
    while (peek().punct(",")) {
      next();
      items.push_back(term());
    }
    if (peek().punct("..")) error(peek(), "a range takes exactly two bounds");
    Term tail = Term::nil();
    if (peek().punct("|")) {
      next();
      tail = term();
      if (peek().punct("..")) error(peek(), "a range cannot have a tail");
    }
    expect_punct("]", "expected ',' '|' or ']' in list");
    return Term::list(items, std::move(tail));
  }

  Term variable(const std::string& name) {
    if (name == "_") return Term::fresh_var("_");
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (it->name == name) return Term(*it);
    auto found = vars_.find(name);
    if (found == vars_.end()) found = vars_.emplace(name, Var{name, fresh_var_id()}).first;
    return Term(found->second);
  }

  const std::vector<Token>& toks_;
  ReaderOptions options_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, Var> vars_;
  std::vector<Var> binders_;
};

}  // namespace

ParseError::ParseError(int line, int column, std::string message, std::string found)
    : std::runtime_error(describe(line, column, message, found)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      found_(std::move(found)) {}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

SourceUnit parse_program(const std::vector<Token>& tokens, const ReaderOptions& options, std::string origin) {
  return Parser(tokens, options).program(std::move(origin));
}

SourceUnit parse_program(std::string_view source, const ReaderOptions& options, std::string origin) {
  return parse_program(tokenize(source), options, std::move(origin));
}

Goal parse_goal(std::string_view text, const ReaderOptions& options) {
  auto tokens = tokenize(text);
  return Parser(tokens, options).single_goal();
}

std::optional<Term> read_term(std::string_view text, std::size_t& consumed) {
  auto tokens = tokenize(text);
  return Parser(tokens, ReaderOptions{}).dotted_term(consumed);
}

}  // namespace forlog
