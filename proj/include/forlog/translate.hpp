// Elimination of bounded quantifiers into recursive auxiliary predicates,
// and a pretty-printer back to surface syntax.
//
//   forall X in L do G      ==>   $forall_k(L, V1, ..., Vn)
//
//   $forall_k([], V1, ..., Vn).
//   $forall_k([X|T], V1, ..., Vn) :- G' & $forall_k(T, V1, ..., Vn).
//
// where V1..Vn are the free variables of G other than X, in order of first
// occurrence, and G' is G with its own loops already eliminated. A range
// list [Lo..Hi] is first expanded by a generated $range_k/3 predicate.
#pragma once

#include <string>
#include <vector>

#include "forlog/ast.hpp"
#include "forlog/engine.hpp"

namespace forlog {

struct TranslationUnit {
  Program original;
  Program translated;
  std::vector<Goal> queries;  // the input queries with their loops eliminated
  std::vector<std::string> aux_names;
};

TranslationUnit eliminate_foralls(const Program& p, const std::vector<Goal>& queries = {});

bool contains_forall(const Goal& g);
bool contains_forall(const Program& p);

/// Surface syntax for `p` followed by `queries`, one clause or query per line.
std::string pretty_print(const Program& p, const std::vector<Goal>& queries = {});

struct QueryCase {
  Goal query;
  std::string input;  // scripted read/1 input
};

struct Divergence {
  std::size_t query_index;
  std::string query;
  std::string detail;
};

struct EquivalenceReport {
  std::size_t checked = 0;
  std::vector<Divergence> divergences;

  bool equivalent() const { return divergences.empty(); }
};

/// Runs every query directly and against the loop-free translation and
/// reports differences in solutions, output bytes or error status.
EquivalenceReport check_equivalence(const Program& p, const std::vector<QueryCase>& queries,
                                    const RunOptions& config = {});

}  // namespace forlog
