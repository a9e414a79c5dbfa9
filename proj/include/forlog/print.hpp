// Text rendering of terms, goals and clauses.
#pragma once

#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "forlog/ast.hpp"

namespace forlog {

enum class TermStyle {
  /// What write/1 emits: strings unquoted, no spaces after commas.
  Write,
  /// Re-readable surface syntax: strings quoted, `, ` separators.
  Source,
};

using VarNamer = std::function<std::string(const Var&)>;

std::string format_term(const Term& t, TermStyle style, const VarNamer& names);

/// Source-style rendering using each variable's own name.
std::string to_string(const Term& t);
std::string to_string(const Goal& g);

/// Assigns printable, mutually distinct names to the variables of one clause.
class ClauseNamer {
 public:
  explicit ClauseNamer(const Clause& c);
  explicit ClauseNamer(const Goal& g);
  std::string operator()(const Var& v) const;

 private:
  void assign(const Term& head, const Goal& body);
  std::unordered_map<VarId, std::string> names_;
};

std::string format_goal(const Goal& g, const VarNamer& names);
std::string format_clause(const Clause& c);
/// `?- goal.` with the implicit existential closure of query variables elided.
std::string format_query(const Goal& query);
/// Strips the leading closure binders added by close_query, returning the
/// closed variables (outermost first) and the body.
/// returning the closed variables (outermost first) and the body.
std::pair<VarList, Goal> open_query(const Goal& query);

}  // namespace forlog
