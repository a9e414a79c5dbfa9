#include "forlog/builtins.hpp"

#include "forlog/engine.hpp"
#include "forlog/print.hpp"

namespace forlog {

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw RuntimeError("division by zero");
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  if (b == 0) throw RuntimeError("division by zero");
  return a - floor_div(a, b) * b;
}

Integer evaluate(const Term& expr, const Bindings& b) {
  Term t = deref(expr, b);
  if (auto* i = t.get_if<Int>()) return i->value;
  if (t.is<Var>()) throw RuntimeError("arithmetic on an unbound variable");
  if (auto* c = t.get_if<Compound>()) {
    if (c->args.size() == 1 && c->functor == "-") return -evaluate(c->args[0], b);
    if (c->args.size() == 2) {
      const std::string& op = c->functor;
      if (op == "+") return evaluate(c->args[0], b) + evaluate(c->args[1], b);
      if (op == "-") return evaluate(c->args[0], b) - evaluate(c->args[1], b);
      if (op == "*") return evaluate(c->args[0], b) * evaluate(c->args[1], b);
      if (op == "//") return floor_div(evaluate(c->args[0], b), evaluate(c->args[1], b));
      if (op == "mod") return floor_mod(evaluate(c->args[0], b), evaluate(c->args[1], b));
    }
  }
  throw RuntimeError("not an arithmetic expression: " + to_string(resolve(t, b)));
}

namespace {

bool write1(Machine& m, const std::vector<Term>& args) {
  m.out().write(m.render(m.resolve(args[0]), TermStyle::Write));
  return true;
}

bool nl0(Machine& m, const std::vector<Term>&) {
  m.out().write("\n");
  return true;
}

bool read1(Machine& m, const std::vector<Term>& args) { return m.unify(args[0], m.in().read()); }

bool is2(Machine& m, const std::vector<Term>& args) {
  return m.unify(args[0], Term::integer(evaluate(args[1], m.bindings())));
}

bool unify2(Machine& m, const std::vector<Term>& args) { return m.unify(args[0], args[1]); }

bool fail0(Machine&, const std::vector<Term>&) { return false; }

template <class Rel>
bool compare2(Machine& m, const std::vector<Term>& args) {
  return Rel{}(evaluate(args[0], m.bindings()), evaluate(args[1], m.bindings()));
}

}  // namespace

const BuiltinTable& BuiltinTable::standard() {
  static const BuiltinTable table = [] {
    BuiltinTable t;
    t.add({"write", 1}, write1);
    t.add({"nl", 0}, nl0);
    t.add({"read", 1}, read1);
    t.add({"is", 2}, is2);
    t.add({"=", 2}, unify2);
    t.add({"fail", 0}, fail0);
    t.add({"<", 2}, compare2<std::less<>>);
    t.add({"=<", 2}, compare2<std::less_equal<>>);
    t.add({">", 2}, compare2<std::greater<>>);
    t.add({">=", 2}, compare2<std::greater_equal<>>);
    t.add({"=:=", 2}, compare2<std::equal_to<>>);
    t.add({"=\\=", 2}, compare2<std::not_equal_to<>>);
    return t;
  }();
  return table;
}

}  // namespace forlog
