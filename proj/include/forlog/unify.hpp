// Bindings store with a trail for backtracking, and first-order unification.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "forlog/ast.hpp"

namespace forlog {

/// Raised for errors that abort a query, as opposed to ordinary failure.
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A position in the trail. Only valid for the trail that issued it.
struct TrailMark {
  std::size_t size = 0;
  std::uint64_t last_serial = 0;  // serial of the newest entry at checkpoint time
};

class Bindings {
 public:
  const Term* lookup(VarId id) const {
    auto it = map_.find(id);
    return it == map_.end() ? nullptr : &it->second;
  }
  bool bound(VarId id) const { return map_.count(id) != 0; }
  std::size_t size() const { return map_.size(); }
  const std::unordered_map<VarId, Term>& entries() const { return map_; }

 private:
  friend class Trail;
  std::unordered_map<VarId, Term> map_;
};

/// Log of the variables bound since the start of a run. Owns all binding
/// writes so that every binding is undoable.
class Trail {
 public:
  void bind(Bindings& b, VarId id, Term value);
  TrailMark checkpoint() const;
  /// Removes every binding made after `mark`. Throws std::logic_error when
  /// `mark` is stale (the trail was already unwound past it).
  void undo(Bindings& b, const TrailMark& mark);
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    VarId id;
    std::uint64_t serial;
  };
  std::vector<Entry> entries_;
  std::uint64_t serial_ = 0;
};

/// Follows variable bindings until an unbound variable or a non-variable.
Term deref(const Term& t, const Bindings& b);

/// Applies all bindings recursively. Throws RuntimeError on a cyclic term.
Term resolve(const Term& t, const Bindings& b);

/// Most general unifier. On failure the bindings and trail are exactly as
/// they were before the call.
bool unify(const Term& a, const Term& b, Bindings& bind, Trail& trail, bool occurs_check);

}  // namespace forlog
