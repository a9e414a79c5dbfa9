#include "forlog/ast.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <unordered_map>

namespace forlog {

VarId fresh_var_id() {
  static std::atomic<VarId> next{1};
  return next.fetch_add(1, std::memory_order_relaxed);
}

Term::Term() : Term(Atom{"[]"}) {}

void Term::release(std::shared_ptr<const TermNode> node) noexcept {
  // Children dropped while draining are queued here instead of freed in place.
  thread_local std::vector<std::shared_ptr<const TermNode>> pending;
  thread_local bool draining = false;
  if (draining) {
    pending.push_back(std::move(node));
    return;
  }
  draining = true;
  node.reset();
  while (!pending.empty()) {
    auto next = std::move(pending.back());
    pending.pop_back();
    next.reset();
  }
  draining = false;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("compound term needs at least one argument");
  return Term(Compound{std::move(functor), std::move(args)});
}

Term Term::range(Term lo, Term hi) {
  return Term(Range{std::make_shared<const Term>(std::move(lo)), std::make_shared<const Term>(std::move(hi))});
}

Term Term::list(const std::vector<Term>& items, Term tail) {
  Term out = std::move(tail);
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons(*it, out);
  return out;
}

bool Term::is_nil() const {
  auto* a = get_if<Atom>();
  return a && a->name == "[]";
}

bool Term::is_cons() const {
  auto* c = get_if<Compound>();
  return c && c->functor == "." && c->args.size() == 2;
}

const std::string& Term::functor() const {
  static const std::string empty;
  if (auto* a = get_if<Atom>()) return a->name;
  if (auto* c = get_if<Compound>()) return c->functor;
  return empty;
}

std::size_t Term::arity() const {
  if (auto* c = get_if<Compound>()) return c->args.size();
  return 0;
}

bool operator==(const Term& a, const Term& b) {
  std::vector<std::pair<const Term*, const Term*>> work{{&a, &b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (x->identity() == y->identity()) continue;
    if (x->node().index() != y->node().index()) return false;
    bool same = std::visit(
        [&](const auto& u) -> bool {
          using T = std::decay_t<decltype(u)>;
          const auto& v = y->as<T>();
          if constexpr (std::is_same_v<T, Var>) return u.id == v.id;
          else if constexpr (std::is_same_v<T, Atom>) return u.name == v.name;
          else if constexpr (std::is_same_v<T, Int>) return u.value == v.value;
          else if constexpr (std::is_same_v<T, Str>) return u.value == v.value;
          else if constexpr (std::is_same_v<T, Compound>) {
            if (u.functor != v.functor || u.args.size() != v.args.size()) return false;
            for (std::size_t i = u.args.size(); i-- > 0;) work.emplace_back(&u.args[i], &v.args[i]);
            return true;
          } else {
            work.emplace_back(u.hi.get(), v.hi.get());
            work.emplace_back(u.lo.get(), v.lo.get());
            return true;
          }
        },
        x->node());
    if (!same) return false;
  }
  return true;
}

namespace {

std::shared_ptr<const Goal> share(Goal g) { return std::make_shared<const Goal>(std::move(g)); }

}  // namespace

Goal Goal::call(Term atom) {
  if (!atom.is_callable()) throw std::invalid_argument("goal must be an atom or compound term");
  return Goal(CallGoal{std::move(atom)});
}
Goal Goal::par_and(Goal l, Goal r) { return Goal(ParAndGoal{share(std::move(l)), share(std::move(r))}); }
Goal Goal::seq_and(Goal l, Goal r) { return Goal(SeqAndGoal{share(std::move(l)), share(std::move(r))}); }
Goal Goal::exists(Var v, Goal body, bool closure) {
  return Goal(ExistsGoal{std::move(v), share(std::move(body)), closure});
}
Goal Goal::forall(Var v, Term list, Goal body) {
  return Goal(ForallGoal{std::move(v), std::move(list), share(std::move(body))});
}

bool operator==(const Goal& a, const Goal& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = b.as<T>();
        if constexpr (std::is_same_v<T, CallGoal>) return x.atom == y.atom;
        else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>)
          return *x.left == *y.left && *x.right == *y.right;
        else if constexpr (std::is_same_v<T, ExistsGoal>) return x.var.id == y.var.id && x.closure == y.closure && *x.body == *y.body;
        else if constexpr (std::is_same_v<T, ForallGoal>)
          return x.var.id == y.var.id && x.list == y.list && *x.body == *y.body;
        else return true;
      },
      a.node());
}

Program::Program(std::vector<Clause> clauses) {
  for (auto& c : clauses) add(std::move(c));
}

void Program::add(Clause c) {
  if (!c.head.is_callable()) throw std::invalid_argument("clause head must be an atom or compound term");
  index_[key_of(c.head)].push_back(clauses_.size());
  clauses_.push_back(std::move(c));
}

const std::vector<std::size_t>& Program::lookup(const PredicateKey& key) const {
  static const std::vector<std::size_t> none;
  auto it = index_.find(key);
  return it == index_.end() ? none : it->second;
}

PredicateKey key_of(const Term& callable) { return {callable.functor(), callable.arity()}; }

namespace {

void add_unique(VarList& out, const Var& v) {
  if (std::none_of(out.begin(), out.end(), [&](const Var& w) { return w.id == v.id; })) out.push_back(v);
}

bool contains(const std::vector<VarId>& ids, VarId id) {
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

void free_vars_rec(const Goal& g, std::vector<VarId>& bound, VarList& out) {
  auto term = [&](const Term& t) {
    for (const auto& v : vars_of(t))
      if (!contains(bound, v.id)) add_unique(out, v);
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CallGoal>) {
          term(x.atom);
        } else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>) {
          free_vars_rec(*x.left, bound, out);
          free_vars_rec(*x.right, bound, out);
        } else if constexpr (std::is_same_v<T, ExistsGoal>) {
          bound.push_back(x.var.id);
          free_vars_rec(*x.body, bound, out);
          bound.pop_back();
        } else if constexpr (std::is_same_v<T, ForallGoal>) {
          term(x.list);
          bound.push_back(x.var.id);
          free_vars_rec(*x.body, bound, out);
          bound.pop_back();
        }
      },
      g.node());
}

}  // namespace

void collect_vars(const Term& t, VarList& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          add_unique(out, x);
        } else if constexpr (std::is_same_v<T, Compound>) {
          for (const auto& a : x.args) collect_vars(a, out);
        } else if constexpr (std::is_same_v<T, Range>) {
          collect_vars(*x.lo, out);
          collect_vars(*x.hi, out);
        }
      },
      t.node());
}

VarList vars_of(const Term& t) {
  VarList out;
  collect_vars(t, out);
  return out;
}

bool is_ground(const Term& t) { return vars_of(t).empty(); }

VarList free_vars(const Goal& g) {
  std::vector<VarId> bound;
  VarList out;
  free_vars_rec(g, bound, out);
  return out;
}

namespace {

// Rebuilds `t` through `leaf`, sharing unchanged subterms.
template <class F>
Term map_vars(const Term& t, F&& leaf) {
  if (auto* v = t.get_if<Var>()) return leaf(*v, t);
  if (auto* c = t.get_if<Compound>()) {
    std::vector<Term> args;
    args.reserve(c->args.size());
    bool changed = false;
    for (const auto& a : c->args) {
      args.push_back(map_vars(a, leaf));
      changed |= args.back().identity() != a.identity();
    }
    return changed ? Term(Compound{c->functor, std::move(args)}) : t;
  }
  if (auto* r = t.get_if<Range>()) {
    Term lo = map_vars(*r->lo, leaf);
    Term hi = map_vars(*r->hi, leaf);
    if (lo.identity() == r->lo->identity() && hi.identity() == r->hi->identity()) return t;
    return Term::range(std::move(lo), std::move(hi));
  }
  return t;
}

}  // namespace

Goal close_query(Goal g) {
  VarList free = free_vars(g);
  for (auto it = free.rbegin(); it != free.rend(); ++it) g = Goal::exists(*it, std::move(g), true);
  return g;
}

Term substitute(const Term& t, const Var& var, const Term& replacement) {
  return map_vars(t, [&](const Var& v, const Term& self) { return v.id == var.id ? replacement : self; });
}

Goal substitute(const Goal& g, const Var& var, const Term& replacement) {
  return std::visit(
      [&](const auto& x) -> Goal {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CallGoal>) {
          return Goal(CallGoal{substitute(x.atom, var, replacement)});
        } else if constexpr (std::is_same_v<T, ParAndGoal>) {
          return Goal::par_and(substitute(*x.left, var, replacement), substitute(*x.right, var, replacement));
        } else if constexpr (std::is_same_v<T, SeqAndGoal>) {
          return Goal::seq_and(substitute(*x.left, var, replacement), substitute(*x.right, var, replacement));
        } else if constexpr (std::is_same_v<T, ExistsGoal>) {
          if (x.var.id == var.id) return g;
          return Goal::exists(x.var, substitute(*x.body, var, replacement), x.closure);
        } else if constexpr (std::is_same_v<T, ForallGoal>) {
          Term list = substitute(x.list, var, replacement);
          if (x.var.id == var.id) return Goal(ForallGoal{x.var, std::move(list), x.body});
          return Goal::forall(x.var, std::move(list), substitute(*x.body, var, replacement));
        } else {
          return g;
        }
      },
      g.node());
}

namespace {

class Renamer {
 public:
  Var rename(const Var& v) {
    auto it = map_.find(v.id);
    if (it == map_.end()) it = map_.emplace(v.id, Var{v.name, fresh_var_id()}).first;
    return it->second;
  }

  Term term(const Term& t) {
    return map_vars(t, [&](const Var& v, const Term&) { return Term(rename(v)); });
  }

  Goal goal(const Goal& g) {
    return std::visit(
        [&](const auto& x) -> Goal {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, CallGoal>) return Goal(CallGoal{term(x.atom)});
          else if constexpr (std::is_same_v<T, ParAndGoal>) return Goal::par_and(goal(*x.left), goal(*x.right));
          else if constexpr (std::is_same_v<T, SeqAndGoal>) return Goal::seq_and(goal(*x.left), goal(*x.right));
          else if constexpr (std::is_same_v<T, ExistsGoal>) return Goal::exists(rename(x.var), goal(*x.body), x.closure);
          else if constexpr (std::is_same_v<T, ForallGoal>) {
            Term list = term(x.list);
            return Goal::forall(rename(x.var), std::move(list), goal(*x.body));
          } else return g;
        },
        g.node());
  }

 private:
  std::unordered_map<VarId, Var> map_;
};

class AlphaEq {
 public:
  bool var(VarId a, VarId b) {
    auto [ia, new_a] = fwd_.emplace(a, b);
    auto [ib, new_b] = back_.emplace(b, a);
    return ia->second == b && ib->second == a;
  }

  bool term(const Term& a, const Term& b) {
    if (a.node().index() != b.node().index()) return false;
    if (auto* va = a.get_if<Var>()) return var(va->id, b.as<Var>().id);
    if (auto* ca = a.get_if<Compound>()) {
      const auto& cb = b.as<Compound>();
      if (ca->functor != cb.functor || ca->args.size() != cb.args.size()) return false;
      for (std::size_t i = 0; i < ca->args.size(); ++i)
        if (!term(ca->args[i], cb.args[i])) return false;
      return true;
    }
    if (auto* ra = a.get_if<Range>()) {
      const auto& rb = b.as<Range>();
      return term(*ra->lo, *rb.lo) && term(*ra->hi, *rb.hi);
    }
    return a == b;
  }

  bool goal(const Goal& a, const Goal& b) {
    if (a.node().index() != b.node().index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = b.as<T>();
          if constexpr (std::is_same_v<T, CallGoal>) return term(x.atom, y.atom);
          else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>)
            return goal(*x.left, *y.left) && goal(*x.right, *y.right);
          else if constexpr (std::is_same_v<T, ExistsGoal>) return x.closure == y.closure && var(x.var.id, y.var.id) && goal(*x.body, *y.body);
          else if constexpr (std::is_same_v<T, ForallGoal>)
            return term(x.list, y.list) && var(x.var.id, y.var.id) && goal(*x.body, *y.body);
          else return true;
        },
        a.node());
  }

 private:
  std::unordered_map<VarId, VarId> fwd_, back_;
};

}  // namespace

Clause rename_clause(const Clause& c) {
  Renamer r;
  Term head = r.term(c.head);
  return Clause{std::move(head), r.goal(c.body)};
}

Goal rename_goal(const Goal& g) { return Renamer{}.goal(g); }

bool equal_up_to_renaming(const Term& a, const Term& b) { return AlphaEq{}.term(a, b); }
bool equal_up_to_renaming(const Goal& a, const Goal& b) { return AlphaEq{}.goal(a, b); }
bool equal_up_to_renaming(const Clause& a, const Clause& b) {
  AlphaEq eq;
  return eq.term(a.head, b.head) && eq.goal(a.body, b.body);
}

}  // namespace forlog
