// Term and formula data for Horn clauses with bounded-quantifier goals.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace forlog {

using Integer = boost::multiprecision::cpp_int;
using VarId = std::uint64_t;

/// Process-wide source of variable identities. Thread safe.
VarId fresh_var_id();

class Term;

struct Var {
  std::string name;
  VarId id = 0;
};

struct Atom {
  std::string name;
};

struct Int {
  Integer value;
};

struct Str {
  std::string value;
};

struct Compound {
  std::string functor;
  std::vector<Term> args;
};

struct Range {
  std::shared_ptr<const Term> lo;
  std::shared_ptr<const Term> hi;
};

using TermNode = std::variant<Var, Atom, Int, Str, Compound, Range>;

/// Immutable, cheaply copyable handle to a term node.
class Term {
 public:
  Term();  // the empty list atom
  Term(TermNode node) : node_(std::make_shared<const TermNode>(std::move(node))) {}
  Term(const Term&) = default;
  Term(Term&&) noexcept = default;
  Term& operator=(const Term& other) {
    Term copy(other);
    swap(copy);
    return *this;
  }
  Term& operator=(Term&& other) noexcept {
    Term moved(std::move(other));
    swap(moved);
    return *this;
  }
  // Releases arbitrarily deep terms without recursion.
  ~Term() {
    if (node_ && node_.use_count() == 1) release(std::move(node_));
  }
  void swap(Term& other) noexcept { node_.swap(other.node_); }

  static Term var(std::string name, VarId id) { return Term(Var{std::move(name), id}); }
  static Term fresh_var(std::string name) { return var(std::move(name), fresh_var_id()); }
  static Term atom(std::string name) { return Term(Atom{std::move(name)}); }
  static Term integer(Integer v) { return Term(Int{std::move(v)}); }
  static Term string(std::string s) { return Term(Str{std::move(s)}); }
  static Term compound(std::string functor, std::vector<Term> args);
  static Term range(Term lo, Term hi);
  static Term nil() { return atom("[]"); }
  static Term cons(Term head, Term tail) { return compound(".", {std::move(head), std::move(tail)}); }
  /// Proper list of `items` ending in `tail`.
  static Term list(const std::vector<Term>& items, Term tail = nil());

  const TermNode& node() const { return *node_; }
  const void* identity() const { return node_.get(); }

  template <class T> bool is() const { return std::holds_alternative<T>(*node_); }
  template <class T> const T& as() const { return std::get<T>(*node_); }
  template <class T> const T* get_if() const { return std::get_if<T>(node_.get()); }

  bool is_callable() const { return is<Atom>() || is<Compound>(); }
  bool is_nil() const;
  bool is_cons() const;
  /// Functor name of an Atom or Compound, empty otherwise.
  const std::string& functor() const;
  std::size_t arity() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  static void release(std::shared_ptr<const TermNode> node) noexcept;
  std::shared_ptr<const TermNode> node_;
};

class Goal;

struct CallGoal { Term atom; };
struct ParAndGoal { std::shared_ptr<const Goal> left, right; };
struct SeqAndGoal { std::shared_ptr<const Goal> left, right; };
struct ExistsGoal {
  Var var;
  std::shared_ptr<const Goal> body;
  bool closure = false;  // added by query closure rather than written by the user
};
struct ForallGoal { Var var; Term list; std::shared_ptr<const Goal> body; };
struct TrueGoal {};

using GoalNode = std::variant<CallGoal, ParAndGoal, SeqAndGoal, ExistsGoal, ForallGoal, TrueGoal>;

class Goal {
 public:
  Goal() : Goal(TrueGoal{}) {}
  Goal(GoalNode node) : node_(std::make_shared<const GoalNode>(std::move(node))) {}

  /// Throws std::invalid_argument unless `atom` is an Atom or Compound.
  static Goal call(Term atom);
  static Goal par_and(Goal l, Goal r);
  static Goal seq_and(Goal l, Goal r);
  static Goal exists(Var v, Goal body, bool closure = false);
  static Goal forall(Var v, Term list, Goal body);
  static Goal truth() { return Goal(TrueGoal{}); }

  const GoalNode& node() const { return *node_; }
  template <class T> bool is() const { return std::holds_alternative<T>(*node_); }
  template <class T> const T& as() const { return std::get<T>(*node_); }

  friend bool operator==(const Goal& a, const Goal& b);
  friend bool operator!=(const Goal& a, const Goal& b) { return !(a == b); }

 private:
  std::shared_ptr<const GoalNode> node_;
};

struct Clause {
  Term head;
  Goal body;  // TrueGoal for facts

  friend bool operator==(const Clause&, const Clause&) = default;
};

using PredicateKey = std::pair<std::string, std::size_t>;

/// Ordered clause list indexed by head functor/arity.
class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Clause> clauses);

  void add(Clause c);
  const std::vector<Clause>& clauses() const { return clauses_; }
  /// Clause positions for `key` in source order; empty when undefined.
  const std::vector<std::size_t>& lookup(const PredicateKey& key) const;
  bool defines(const PredicateKey& key) const { return index_.count(key) != 0; }
  const std::map<PredicateKey, std::vector<std::size_t>>& index() const { return index_; }

 private:
  std::vector<Clause> clauses_;
  std::map<PredicateKey, std::vector<std::size_t>> index_;
};

PredicateKey key_of(const Term& callable);

/// Variables ordered by first occurrence, without duplicates.
using VarList = std::vector<Var>;

void collect_vars(const Term& t, VarList& out);
VarList vars_of(const Term& t);
bool is_ground(const Term& t);

/// Variables occurring in `g` outside the scope of a binder for them,
/// in order of first occurrence.
VarList free_vars(const Goal& g);

/// Existential closure over the free variables, first occurrence outermost.
/// The added binders are flagged so that answer reporting can find them.
Goal close_query(Goal g);

Term substitute(const Term& t, const Var& var, const Term& replacement);
/// Replaces free occurrences of `var`; a Forall/Exists binding the same
/// variable shadows its body (a Forall list is outside the binder's scope).
Goal substitute(const Goal& g, const Var& var, const Term& replacement);

/// Copy of `c` with every variable, binders included, replaced by a fresh one.
Clause rename_clause(const Clause& c);
Goal rename_goal(const Goal& g);

/// Structural equality where variables are compared through a bijection.
bool equal_up_to_renaming(const Term& a, const Term& b);
bool equal_up_to_renaming(const Goal& a, const Goal& b);
bool equal_up_to_renaming(const Clause& a, const Clause& b);

}  // namespace forlog
