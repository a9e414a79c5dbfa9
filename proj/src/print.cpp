#include "forlog/print.hpp"

#include <algorithm>
#include <sstream>

namespace forlog {

namespace {

int infix_priority(const Compound& c) {
  if (c.args.size() != 2) return 0;
  if (c.functor == "+" || c.functor == "-") return 500;
  if (c.functor == "*" || c.functor == "//" || c.functor == "mod") return 400;
  return 0;
}

bool is_relation(const std::string& f) {
  return f == "is" || f == "=" || f == "<" || f == "=<" || f == ">" || f == ">=" || f == "=:=" || f == "=\\=";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += ch;
    }
  }
  return out + '"';
}

class TermWriter {
 public:
  TermWriter(TermStyle style, const VarNamer& names) : style_(style), names_(names) {}

  void write(const Term& t, int max_priority, std::string& out) const {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Var>) out += names_(x);
          else if constexpr (std::is_same_v<T, Atom>) out += x.name;
          else if constexpr (std::is_same_v<T, Int>) out += x.value.str();
          else if constexpr (std::is_same_v<T, Str>) out += style_ == TermStyle::Source ? quote(x.value) : x.value;
          else if constexpr (std::is_same_v<T, Range>) {
            out += '[';
            write(*x.lo, 999, out);
            out += "..";
            write(*x.hi, 999, out);
            out += ']';
          } else {
            compound(t, x, max_priority, out);
          }
        },
        t.node());
  }

 private:
  const char* comma() const { return style_ == TermStyle::Source ? ", " : ","; }

  void compound(const Term& t, const Compound& c, int max_priority, std::string& out) const {
    if (t.is_cons()) {
      list(t, out);
      return;
    }
    if (int p = infix_priority(c)) {
      bool paren = p > max_priority;
      if (paren) out += '(';
      write(c.args[0], p, out);
      bool spaced = style_ == TermStyle::Source || c.functor == "mod";
      out += spaced ? " " + c.functor + " " : c.functor;
      write(c.args[1], p - 1, out);
      if (paren) out += ')';
      return;
    }
    out += c.functor;
    out += '(';
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) out += comma();
      write(c.args[i], 999, out);
    }
    out += ')';
  }

  void list(const Term& t, std::string& out) const {
    out += '[';
    Term cur = t;
    bool first = true;
    while (cur.is_cons()) {
      if (!first) out += comma();
      first = false;
      const auto& c = cur.as<Compound>();
      write(c.args[0], 999, out);
      cur = c.args[1];
    }
    if (!cur.is_nil()) {
      out += '|';
      write(cur, 999, out);
    }
    out += ']';
  }

  TermStyle style_;
  const VarNamer& names_;
};

std::string own_name(const Var& v) { return v.name; }

// Goal precedence levels: 1 unit, 2 parallel conjunction, 3 sequential.
void write_goal(const Goal& g, int level, const VarNamer& names, std::string& out) {
  TermWriter terms(TermStyle::Source, names);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TrueGoal>) {
          out += "true";
        } else if constexpr (std::is_same_v<T, CallGoal>) {
          const auto* c = x.atom.template get_if<Compound>();
          if (c && c->args.size() == 2 && is_relation(c->functor)) {
            terms.write(c->args[0], 999, out);
            out += ' ' + c->functor + ' ';
            terms.write(c->args[1], 999, out);
          } else {
            terms.write(x.atom, 999, out);
          }
        } else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>) {
          int own = std::is_same_v<T, ParAndGoal> ? 2 : 3;
          bool paren = own > level;
          if (paren) out += '(';
          write_goal(*x.left, own, names, out);
          out += own == 2 ? ", " : " & ";
          write_goal(*x.right, own - 1, names, out);
          if (paren) out += ')';
        } else if constexpr (std::is_same_v<T, ExistsGoal>) {
          out += "exists " + names(x.var) + " do ";
          write_goal(*x.body, 1, names, out);
        } else {
          out += "forall " + names(x.var) + " in ";
          terms.write(x.list, 999, out);
          out += " do ";
          write_goal(*x.body, 1, names, out);
        }
      },
      g.node());
}

void binders_and_vars(const Goal& g, VarList& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CallGoal>) {
          collect_vars(x.atom, out);
        } else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>) {
          binders_and_vars(*x.left, out);
          binders_and_vars(*x.right, out);
        } else if constexpr (std::is_same_v<T, ExistsGoal>) {
          out.push_back(x.var);
          binders_and_vars(*x.body, out);
        } else if constexpr (std::is_same_v<T, ForallGoal>) {
          collect_vars(x.list, out);
          out.push_back(x.var);
          binders_and_vars(*x.body, out);
        }
      },
      g.node());
}

}  // namespace

std::string format_term(const Term& t, TermStyle style, const VarNamer& names) {
  std::string out;
  TermWriter(style, names).write(t, 1200, out);
  return out;
}

std::string to_string(const Term& t) { return format_term(t, TermStyle::Source, own_name); }
std::string to_string(const Goal& g) { return format_goal(g, own_name); }

ClauseNamer::ClauseNamer(const Clause& c) { assign(c.head, c.body); }
ClauseNamer::ClauseNamer(const Goal& g) { assign(Term::nil(), g); }

void ClauseNamer::assign(const Term& head, const Goal& body) {
  VarList occurrences;
  collect_vars(head, occurrences);
  binders_and_vars(body, occurrences);
  std::unordered_map<VarId, int> count;
  {
    // Binders count as used twice so they never print as `_`.
    std::function<void(const Term&)> count_term = [&](const Term& t) {
      if (auto* v = t.get_if<Var>()) ++count[v->id];
      else if (auto* c = t.get_if<Compound>()) for (const auto& a : c->args) count_term(a);
      else if (auto* r = t.get_if<Range>()) { count_term(*r->lo); count_term(*r->hi); }
    };
    std::function<void(const Goal&)> count_goal = [&](const Goal& g) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, CallGoal>) count_term(x.atom);
            else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>) {
              count_goal(*x.left);
              count_goal(*x.right);
            } else if constexpr (std::is_same_v<T, ExistsGoal>) {
              count[x.var.id] += 2;
              count_goal(*x.body);
            } else if constexpr (std::is_same_v<T, ForallGoal>) {
              count_term(x.list);
              count[x.var.id] += 2;
              count_goal(*x.body);
            }
          },
          g.node());
    };
    count_term(head);
    count_goal(body);
  }
  std::unordered_set<std::string> used;
  for (const auto& v : occurrences) {
    if (names_.count(v.id)) continue;
    if (v.name == "_" && count[v.id] == 1) {
      names_[v.id] = "_";
      continue;
    }
    std::string base = v.name.empty() || v.name == "_" ? "_V" : v.name;
    std::string name = base;
    for (int n = 1; used.count(name); ++n) name = base + "_" + std::to_string(n);
    used.insert(name);
    names_[v.id] = name;
  }
}

std::string ClauseNamer::operator()(const Var& v) const {
  auto it = names_.find(v.id);
  return it == names_.end() ? "_G" + std::to_string(v.id) : it->second;
}

std::string format_goal(const Goal& g, const VarNamer& names) {
  std::string out;
  write_goal(g, 3, names, out);
  return out;
}

std::string format_clause(const Clause& c) {
  ClauseNamer names(c);
  VarNamer namer = std::cref(names);
  std::string out = format_term(c.head, TermStyle::Source, namer);
  if (!c.body.is<TrueGoal>()) out += " :- " + format_goal(c.body, namer);
  return out + '.';
}

std::pair<VarList, Goal> open_query(const Goal& query) {
  VarList chain;
  Goal body = query;
  while (body.is<ExistsGoal>() && body.as<ExistsGoal>().closure) {
    const auto& e = body.as<ExistsGoal>();
    chain.push_back(e.var);
    Goal inner = *e.body;
    body = std::move(inner);
  }
  return {chain, body};
}

std::string format_query(const Goal& query) {
  Goal body = open_query(query).second;
  ClauseNamer names(body);
  return "?- " + format_goal(body, std::cref(names)) + '.';
}

}  // namespace forlog
