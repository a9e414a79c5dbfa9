// Primitive predicates: write/1, nl/0, read/1, is/2, comparisons, =/2, fail/0.
#pragma once

#include <map>
#include <vector>

#include "forlog/ast.hpp"
#include "forlog/unify.hpp"

namespace forlog {

class Machine;

/// Deterministic primitive: returns false on failure, throws RuntimeError on error.
using Builtin = bool (*)(Machine& m, const std::vector<Term>& args);

class BuiltinTable {
 public:
  static const BuiltinTable& standard();

  const Builtin* find(const PredicateKey& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }
  bool contains(const PredicateKey& key) const { return table_.count(key) != 0; }
  void add(PredicateKey key, Builtin fn) { table_[std::move(key)] = fn; }

 private:
  std::map<PredicateKey, Builtin> table_;
};

/// Integer value of a ground arithmetic expression over + - * // mod and
/// unary minus. `//` floors and `mod` takes the sign of the divisor.
Integer evaluate(const Term& expr, const Bindings& b);

Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);

}  // namespace forlog
