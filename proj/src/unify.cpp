#include "forlog/unify.hpp"

#include <unordered_set>
#include <utility>

namespace forlog {

void Trail::bind(Bindings& b, VarId id, Term value) {
  b.map_.insert_or_assign(id, std::move(value));
  entries_.push_back({id, ++serial_});
}

TrailMark Trail::checkpoint() const {
  return {entries_.size(), entries_.empty() ? 0 : entries_.back().serial};
}

void Trail::undo(Bindings& b, const TrailMark& mark) {
  bool stale = mark.size > entries_.size() || (mark.size > 0 && entries_[mark.size - 1].serial != mark.last_serial);
  if (stale) throw std::logic_error("undo with a stale trail mark");
  while (entries_.size() > mark.size) {
    b.map_.erase(entries_.back().id);
    entries_.pop_back();
  }
}

Term deref(const Term& t, const Bindings& b) {
  Term cur = t;
  while (auto* v = cur.get_if<Var>()) {
    const Term* next = b.lookup(v->id);
    if (!next) break;
    cur = *next;
  }
  return cur;
}

namespace {

class Resolver {
 public:
  explicit Resolver(const Bindings& b) : b_(b) {}

  Term run(const Term& t) {
    if (auto* v = t.get_if<Var>()) {
      const Term* next = b_.lookup(v->id);
      if (!next) return t;
      if (!active_.insert(v->id).second) throw RuntimeError("cyclic term");
      Term out = run(*next);
      active_.erase(v->id);
      return out;
    }
    if (t.is_cons()) return list(t);
    if (auto* c = t.get_if<Compound>()) {
      std::vector<Term> args;
      args.reserve(c->args.size());
      bool changed = false;
      for (const auto& a : c->args) {
        args.push_back(run(a));
        changed |= args.back().identity() != a.identity();
      }
      return changed ? Term(Compound{c->functor, std::move(args)}) : t;
    }
    if (auto* r = t.get_if<Range>()) return Term::range(run(*r->lo), run(*r->hi));
    return t;
  }

 private:
  // Walks list spines iteratively so long lists do not deepen the recursion.
  Term list(const Term& t) {
    std::vector<Term> items;
    std::vector<VarId> entered;
    Term cur = t;
    for (;;) {
      if (auto* v = cur.get_if<Var>()) {
        const Term* next = b_.lookup(v->id);
        if (!next) break;
        if (!active_.insert(v->id).second) throw RuntimeError("cyclic term");
        entered.push_back(v->id);
        cur = *next;
        continue;
      }
      if (!cur.is_cons()) break;
      const auto& c = cur.as<Compound>();
      items.push_back(run(c.args[0]));
      cur = c.args[1];
    }
    Term tail = run(cur);
    for (VarId id : entered) active_.erase(id);
    return Term::list(items, std::move(tail));
  }

  const Bindings& b_;
  std::unordered_set<VarId> active_;
};

bool occurs(VarId id, const Term& t, const Bindings& b) {
  std::vector<Term> stack{t};
  while (!stack.empty()) {
    Term cur = deref(stack.back(), b);
    stack.pop_back();
    if (auto* v = cur.get_if<Var>()) {
      if (v->id == id) return true;
    } else if (auto* c = cur.get_if<Compound>()) {
      for (const auto& a : c->args) stack.push_back(a);
    } else if (auto* r = cur.get_if<Range>()) {
      stack.push_back(*r->lo);
      stack.push_back(*r->hi);
    }
  }
  return false;
}

bool same_constant(const Term& a, const Term& b) {
  if (a.node().index() != b.node().index()) return false;
  if (auto* x = a.get_if<Atom>()) return x->name == b.as<Atom>().name;
  if (auto* x = a.get_if<Int>()) return x->value == b.as<Int>().value;
  if (auto* x = a.get_if<Str>()) return x->value == b.as<Str>().value;
  return false;
}

}  // namespace

Term resolve(const Term& t, const Bindings& b) { return Resolver(b).run(t); }

bool unify(const Term& a, const Term& b, Bindings& bind, Trail& trail, bool occurs_check) {
  TrailMark start = trail.checkpoint();
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = std::move(work.back());
    work.pop_back();
    x = deref(x, bind);
    y = deref(y, bind);
    if (x.identity() == y.identity()) continue;
    auto* vx = x.get_if<Var>();
    auto* vy = y.get_if<Var>();
    if (vx && vy) {
      if (vx->id == vy->id) continue;
      // The younger variable points at the older one.
      if (vx->id > vy->id) trail.bind(bind, vx->id, y);
      else trail.bind(bind, vy->id, x);
      continue;
    }
    if (vx || vy) {
      VarId id = vx ? vx->id : vy->id;
      const Term& value = vx ? y : x;
      if (occurs_check && occurs(id, value, bind)) {
        trail.undo(bind, start);
        return false;
      }
      trail.bind(bind, id, value);
      continue;
    }
    auto* cx = x.get_if<Compound>();
    auto* cy = y.get_if<Compound>();
    if (cx && cy) {
      if (cx->functor != cy->functor || cx->args.size() != cy->args.size()) {
        trail.undo(bind, start);
        return false;
      }
      for (std::size_t i = cx->args.size(); i-- > 0;) work.emplace_back(cx->args[i], cy->args[i]);
      continue;
    }
    auto* rx = x.get_if<Range>();
    auto* ry = y.get_if<Range>();
    if (rx && ry) {
      work.emplace_back(*rx->hi, *ry->hi);
      work.emplace_back(*rx->lo, *ry->lo);
      continue;
    }
    if (!same_constant(x, y)) {
      trail.undo(bind, start);
      return false;
    }
  }
  return true;
}

}  // namespace forlog
