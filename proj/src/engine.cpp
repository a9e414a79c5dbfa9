#include "forlog/engine.hpp"

#include <ostream>

#include "forlog/reader.hpp"

namespace forlog {

bool InputSource::pull() {
  if (!refill_) return false;
  auto line = refill_();
  if (!line) return false;
  buffer_ += *line;
  buffer_ += '\n';
  return true;
}

Term InputSource::read() {
  for (;;) {
    std::string_view rest = std::string_view(buffer_).substr(pos_);
    try {
      std::size_t used = 0;
      if (auto t = read_term(rest, used)) {
        pos_ += used;
        return *t;
      }
      if (!pull()) throw RuntimeError("read/1: end of input");
    } catch (const ParseError& e) {
      if (e.found() == "end of input" && pull()) continue;
      throw RuntimeError(std::string("read/1: malformed input: ") + e.what());
    }
  }
}

void OutputSink::write(std::string_view s) {
  if (s.empty()) return;
  if (stream_) {
    stream_->write(s.data(), static_cast<std::streamsize>(s.size()));
  } else {
    buffer_.append(s);
  }
  at_line_start_ = s.back() == '\n';
}

const AnswerBinding* Solution::find(std::string_view name) const {
  for (const auto& b : bindings)
    if (b.name == name) return &b;
  return nullptr;
}

Term expand_range(const Term& lo, const Term& hi, const Bindings& b) {
  Term l = forlog::deref(lo, b);
  Term h = forlog::deref(hi, b);
  for (const Term* end : {&l, &h}) {
    if (end->is<Var>()) throw RuntimeError("range bound not instantiated");
    if (!end->is<Int>()) throw RuntimeError("range bound is not an integer: " + to_string(resolve(*end, b)));
  }
  const Integer& from = l.as<Int>().value;
  const Integer& to = h.as<Int>().value;
  Term out = Term::nil();
  for (Integer i = to; i >= from; --i) out = Term::cons(Term::integer(i), out);
  return out;
}

Machine::Frame::~Frame() {
  // Frames are always allocated non-const, so detaching a successor's link is well defined.
  while (next && next.use_count() == 1) {
    Cont successor = std::move(next);
    next = std::move(const_cast<Frame&>(*successor).next);
  }
}

Machine::Machine(std::shared_ptr<const Program> program, MachineOptions options, std::shared_ptr<OutputSink> out,
                 std::shared_ptr<InputSource> in)
    : program_(std::move(program)),
      options_(options),
      out_(std::move(out)),
      in_(std::move(in)),
      builtins_(BuiltinTable::standard()) {
  for (const auto& [key, positions] : program_->index()) {
    if (builtins_.contains(key))
      throw RuntimeError("cannot redefine builtin " + key.first + "/" + std::to_string(key.second));
  }
}

void Machine::start(const Goal& query) {
  if (trail_.size() > 0) trail_.undo(bind_, TrailMark{});
  choices_.clear();
  auto [vars, body] = open_query(query);
  answer_vars_ = std::move(vars);
  cont_ = std::make_shared<Frame>(body, 0, nullptr);
  state_ = State::Fresh;
}

std::optional<Solution> Machine::next() {
  if (state_ == State::Idle) throw std::logic_error("Machine::next called before start");
  if (state_ == State::Done) return std::nullopt;
  try {
    if ((state_ == State::Yielded && !backtrack()) || !run()) {
      state_ = State::Done;
      trail_.undo(bind_, TrailMark{});
      cont_.reset();
      return std::nullopt;
    }
    state_ = State::Yielded;
    return collect();
  } catch (...) {
    state_ = State::Done;
    throw;
  }
}

bool Machine::unify(const Term& a, const Term& b) { return forlog::unify(a, b, bind_, trail_, options_.occurs_check); }

std::string Machine::render(const Term& t, TermStyle style) {
  return format_term(t, style, [this](const Var& v) {
    auto [it, inserted] = display_ids_.emplace(v.id, display_ids_.size());
    return "_G" + std::to_string(it->second);
  });
}

bool Machine::run() {
  for (;;) {
    bool failed = false;
    while (cont_) {
      Cont frame = cont_;
      cont_ = frame->next;
      if (!step(*frame)) {
        failed = true;
        break;
      }
    }
    if (!failed) return true;
    if (!backtrack()) return false;
  }
}

bool Machine::step(const Frame& frame) {
  Cont rest = cont_;
  std::size_t depth = frame.depth;
  if (const auto* loop = std::get_if<LoopStep>(&frame.item)) {
    const auto& items = *loop->items;
    Cont after = rest;
    if (loop->index + 1 < items.size())
      after = std::make_shared<Frame>(LoopStep{loop->var, loop->items, loop->index + 1, loop->body}, depth, rest);
    cont_ = std::make_shared<Frame>(substitute(loop->body, loop->var, items[loop->index]), depth, after);
    return true;
  }
  const Goal& goal = std::get<Goal>(frame.item);
  return std::visit(
      [&](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, TrueGoal>) {
          return true;
        } else if constexpr (std::is_same_v<T, CallGoal>) {
          return call(g.atom, depth, rest);
        } else if constexpr (std::is_same_v<T, ParAndGoal> || std::is_same_v<T, SeqAndGoal>) {
          auto right = std::make_shared<Frame>(*g.right, depth, rest);
          cont_ = std::make_shared<Frame>(*g.left, depth, std::move(right));
          return true;
        } else if constexpr (std::is_same_v<T, ExistsGoal>) {
          Term fresh = Term::fresh_var(g.var.name);
          cont_ = std::make_shared<Frame>(substitute(*g.body, g.var, fresh), depth, rest);
          return true;
        } else {
          return forall(g, depth, rest);
        }
      },
      goal.node());
}

bool Machine::forall(const ForallGoal& g, std::size_t depth, const Cont& rest) {
  Term list = resolve(g.list);
  if (list.is<Var>()) throw RuntimeError("iteration list not instantiated");
  if (auto* r = list.get_if<Range>()) list = expand_range(*r->lo, *r->hi, bind_);
  auto items = std::make_shared<std::vector<Term>>();
  Term cur = list;
  while (cur.is_cons()) {
    const auto& c = cur.as<Compound>();
    items->push_back(c.args[0]);
    cur = c.args[1];
  }
  if (cur.is<Var>()) throw RuntimeError("iteration list not instantiated: " + render(list, TermStyle::Source));
  if (!cur.is_nil()) throw RuntimeError("iteration list is not a list: " + render(list, TermStyle::Source));
  if (items->empty()) return true;
  cont_ = std::make_shared<Frame>(LoopStep{g.var, std::move(items), 0, *g.body}, depth, rest);
  return true;
}

bool Machine::call(const Term& atom, std::size_t depth, const Cont& rest) {
  PredicateKey key = key_of(atom);
  if (options_.trace) *options_.trace << std::string(depth * 2, ' ') << "call " << render(resolve(atom), TermStyle::Source) << '\n';
  if (const Builtin* fn = builtins_.find(key)) {
    static const std::vector<Term> no_args;
    const auto* c = atom.get_if<Compound>();
    return (*fn)(*this, c ? c->args : no_args);
  }
  if (!program_->defines(key)) throw RuntimeError("unknown predicate " + key.first + "/" + std::to_string(key.second));
  return try_clauses(atom, depth, 0, rest);
}

bool Machine::try_clauses(const Term& atom, std::size_t depth, std::size_t from, const Cont& rest) {
  const auto& positions = program_->lookup(key_of(atom));
  for (std::size_t i = from; i < positions.size(); ++i) {
    TrailMark mark = trail_.checkpoint();
    Clause clause = rename_clause(program_->clauses()[positions[i]]);
    if (!unify(clause.head, atom)) continue;
    if (i + 1 < positions.size()) choices_.push_back(ChoicePoint{mark, atom, depth, i + 1, rest});
    if (!clause.body.is<TrueGoal>()) {
      if (options_.depth_limit && depth + 1 > *options_.depth_limit)
        throw RuntimeError("depth limit " + std::to_string(*options_.depth_limit) + " exceeded");
      cont_ = std::make_shared<Frame>(std::move(clause.body), depth + 1, rest);
    } else {
      cont_ = rest;
    }
    return true;
  }
  return false;
}

bool Machine::backtrack() {
  while (!choices_.empty()) {
    ChoicePoint cp = std::move(choices_.back());
    choices_.pop_back();
    trail_.undo(bind_, cp.mark);
    if (options_.trace)
      *options_.trace << std::string(cp.depth * 2, ' ') << "redo " << render(resolve(cp.call), TermStyle::Source) << '\n';
    if (try_clauses(cp.call, cp.depth, cp.next_clause, cp.cont)) return true;
  }
  return false;
}

Solution Machine::collect() {
  Solution s;
  for (const auto& v : answer_vars_) {
    if (v.name == "_") continue;
    Term value = resolve(Term(v));
    s.bindings.push_back({v.name, value, render(value, TermStyle::Source)});
  }
  return s;
}

QueryResult run_query(std::shared_ptr<const Program> program, const Goal& query, const RunOptions& options) {
  QueryResult result;
  auto out = std::make_shared<OutputSink>();
  try {
    Machine m(std::move(program), options.machine, out, std::make_shared<InputSource>(options.input));
    m.start(query);
    while (!options.max_solutions || result.solutions.size() < *options.max_solutions) {
      auto s = m.next();
      if (!s) break;
      result.solutions.push_back(std::move(*s));
    }
  } catch (const RuntimeError& e) {
    result.error = e.what();
  }
  result.output = out->text();
  return result;
}

}  // namespace forlog
