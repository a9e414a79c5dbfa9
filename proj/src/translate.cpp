#include "forlog/translate.hpp"

#include <sstream>

#include "forlog/print.hpp"

namespace forlog {

namespace {

class Eliminator {
 public:
  explicit Eliminator(const Program& p) : source_(p) {}

  Goal goal(const Goal& g) {
    return std::visit(
        [&](const auto& x) -> Goal {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, ParAndGoal>) return Goal::par_and(goal(*x.left), goal(*x.right));
          else if constexpr (std::is_same_v<T, SeqAndGoal>) return Goal::seq_and(goal(*x.left), goal(*x.right));
          else if constexpr (std::is_same_v<T, ExistsGoal>) return Goal::exists(x.var, goal(*x.body), x.closure);
          else if constexpr (std::is_same_v<T, ForallGoal>) return loop(x);
          else return g;
        },
        g.node());
  }

  std::vector<Clause> aux_clauses;
  std::vector<std::string> aux_names;

 private:
  Goal loop(const ForallGoal& f) {
    Goal body = goal(*f.body);
    VarList carried;
    for (const auto& v : free_vars(*f.body))
      if (v.id != f.var.id) carried.push_back(v);

    std::string name = fresh_name("$forall_");
    auto head = [&](Term list) {
      std::vector<Term> args{std::move(list)};
      for (const auto& v : carried) args.emplace_back(v);
      return Term::compound(name, std::move(args));
    };
    Term tail = Term::fresh_var("T");
    aux_clauses.push_back({head(Term::nil()), Goal::truth()});
    aux_clauses.push_back({head(Term::cons(Term(f.var), tail)), Goal::seq_and(body, Goal::call(head(tail)))});

    if (auto* r = f.list.get_if<Range>()) {
      Term expanded = Term::fresh_var("R");
      Term expand = Term::compound(range_helper(), {*r->lo, *r->hi, expanded});
      return Goal::seq_and(Goal::call(std::move(expand)), Goal::call(head(expanded)));
    }
    return Goal::call(head(f.list));
  }

  const std::string& range_helper() {
    if (!range_name_.empty()) return range_name_;
    range_name_ = fresh_name("$range_");
    Term lo = Term::fresh_var("Lo"), hi = Term::fresh_var("Hi");
    Term next = Term::fresh_var("N"), rest = Term::fresh_var("T");
    aux_clauses.push_back({Term::compound(range_name_, {lo, hi, Term::nil()}),
                           Goal::call(Term::compound(">", {lo, hi}))});
    Goal step = Goal::par_and(
        Goal::par_and(Goal::call(Term::compound("=<", {lo, hi})),
                      Goal::call(Term::compound("is", {next, Term::compound("+", {lo, Term::integer(1)})}))),
        Goal::call(Term::compound(range_name_, {next, hi, rest})));
    aux_clauses.push_back({Term::compound(range_name_, {lo, hi, Term::cons(lo, rest)}), std::move(step)});
    return range_name_;
  }

  std::string fresh_name(const std::string& prefix) {
    for (;;) {
      std::string name = prefix + std::to_string(++counter_);
      bool taken = false;
      for (const auto& [key, _] : source_.index()) taken |= key.first == name;
      if (!taken) {
        aux_names.push_back(name);
        return name;
      }
    }
  }

  const Program& source_;
  std::string range_name_;
  int counter_ = 0;
};

}  // namespace

TranslationUnit eliminate_foralls(const Program& p, const std::vector<Goal>& queries) {
  Eliminator elim(p);
  TranslationUnit unit;
  unit.original = p;
  for (const auto& c : p.clauses()) unit.translated.add({c.head, elim.goal(c.body)});
  for (const auto& q : queries) unit.queries.push_back(elim.goal(q));
  for (auto& c : elim.aux_clauses) unit.translated.add(std::move(c));
  unit.aux_names = std::move(elim.aux_names);
  return unit;
}

bool contains_forall(const Goal& g) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ForallGoal>) return true;
        else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>)
          return contains_forall(*x.left) || contains_forall(*x.right);
        else if constexpr (std::is_same_v<T, ExistsGoal>) return contains_forall(*x.body);
        else return false;
      },
      g.node());
}

bool contains_forall(const Program& p) {
  for (const auto& c : p.clauses())
    if (contains_forall(c.body)) return true;
  return false;
}

std::string pretty_print(const Program& p, const std::vector<Goal>& queries) {
  std::string out;
  for (const auto& c : p.clauses()) out += format_clause(c) + '\n';
  for (const auto& q : queries) out += format_query(q) + '\n';
  return out;
}

namespace {

std::string describe(const QueryResult& r) {
  std::ostringstream s;
  s << r.solutions.size() << " solution(s)";
  for (const auto& sol : r.solutions) {
    s << " {";
    for (const auto& b : sol.bindings) s << ' ' << b.name << '=' << b.text;
    s << " }";
  }
  s << ", output \"" << r.output << '"';
  if (r.error) s << ", error: " << *r.error;
  return s.str();
}

bool same(const QueryResult& a, const QueryResult& b) {
  if (a.output != b.output || a.error.has_value() != b.error.has_value()) return false;
  if (a.solutions.size() != b.solutions.size()) return false;
  for (std::size_t i = 0; i < a.solutions.size(); ++i) {
    const auto& x = a.solutions[i].bindings;
    const auto& y = b.solutions[i].bindings;
    if (x.size() != y.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x[j].name != y[j].name || x[j].text != y[j].text) return false;
  }
  return true;
}

}  // namespace

EquivalenceReport check_equivalence(const Program& p, const std::vector<QueryCase>& queries, const RunOptions& config) {
  std::vector<Goal> goals;
  for (const auto& q : queries) goals.push_back(q.query);
  TranslationUnit unit = eliminate_foralls(p, goals);
  auto direct = std::make_shared<const Program>(p);
  auto translated = std::make_shared<const Program>(unit.translated);

  EquivalenceReport report;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    RunOptions opts = config;
    opts.input = queries[i].input;
    QueryResult a = run_query(direct, queries[i].query, opts);
    QueryResult b = run_query(translated, unit.queries[i], opts);
    ++report.checked;
    if (!same(a, b))
      report.divergences.push_back({i, format_query(queries[i].query), "direct: " + describe(a) + "; translated: " + describe(b)});
  }
  return report;
}

}  // namespace forlog
