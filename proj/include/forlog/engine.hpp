// Depth-first, left-to-right proof search over Horn clauses with
// bounded-quantifier goals.
//
// Dispatch follows the top-level constructor of the goal:
//   Call      builtin, or backchaining on program clauses in source order
//   ParAnd    left then right, shared bindings
//   SeqAnd    left then right, shared bindings, side effects ordered
//   Exists    body with the variable replaced by a fresh one
//   Forall    [] succeeds at once; [a1,...,an] runs body[a1/x] then the
//             loop over [a2,...,an]. Earlier iterations stay open for
//             backtracking.
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "forlog/ast.hpp"
#include "forlog/builtins.hpp"
#include "forlog/print.hpp"
#include "forlog/unify.hpp"

namespace forlog {

/// Terms consumed by read/1. Text is either supplied up front or pulled
/// line by line from `refill`.
class InputSource {
 public:
  using Refill = std::function<std::optional<std::string>()>;

  InputSource() = default;
  explicit InputSource(std::string text, Refill refill = {}) : buffer_(std::move(text)), refill_(std::move(refill)) {}

  /// Next `term.` from the input. Throws RuntimeError at end of input or on
  /// a malformed term.
  Term read();

 private:
  bool pull();

  std::string buffer_;
  std::size_t pos_ = 0;
  Refill refill_;
};

/// Byte sink for write/1 and nl/0. Buffers unless given a stream.
class OutputSink {
 public:
  OutputSink() = default;
  explicit OutputSink(std::ostream& stream) : stream_(&stream) {}

  void write(std::string_view s);
  bool at_line_start() const { return at_line_start_; }
  /// Everything written so far, when buffering.
  const std::string& text() const { return buffer_; }

 private:
  std::ostream* stream_ = nullptr;
  std::string buffer_;
  bool at_line_start_ = true;
};

struct MachineOptions {
  bool occurs_check = false;
  std::optional<std::size_t> depth_limit;
  /// Call trace, one line per predicate call.
  std::ostream* trace = nullptr;
};

struct AnswerBinding {
  std::string name;
  Term value;        // fully dereferenced
  std::string text;  // rendered with this machine's variable numbering
};

struct Solution {
  std::vector<AnswerBinding> bindings;  // order of first occurrence in the query

  const AnswerBinding* find(std::string_view name) const;
};

/// Integers lo, lo+1, ..., hi; empty when lo > hi.
Term expand_range(const Term& lo, const Term& hi, const Bindings& b);

class Machine {
 public:
  Machine(std::shared_ptr<const Program> program, MachineOptions options = {},
          std::shared_ptr<OutputSink> out = std::make_shared<OutputSink>(),
          std::shared_ptr<InputSource> in = std::make_shared<InputSource>());

  /// Begins a new query. Variables closed by the query's leading `exists`
  /// chain are reported in each solution.
  void start(const Goal& query);
  /// Next solution, or nullopt when the search space is exhausted.
  /// Runtime errors propagate and end the query.
  std::optional<Solution> next();

  // Primitive access used by builtins.
  bool unify(const Term& a, const Term& b);
  Term deref(const Term& t) const { return forlog::deref(t, bind_); }
  Term resolve(const Term& t) const { return forlog::resolve(t, bind_); }
  std::string render(const Term& t, TermStyle style);
  OutputSink& out() { return *out_; }
  InputSource& in() { return *in_; }

  const Bindings& bindings() const { return bind_; }
  const Trail& trail() const { return trail_; }
  const Program& program() const { return *program_; }

 private:
  struct Frame;
  using Cont = std::shared_ptr<const Frame>;
  struct LoopStep {
    Var var;
    std::shared_ptr<const std::vector<Term>> items;
    std::size_t index;
    Goal body;
  };
  struct Frame {
    Frame(std::variant<Goal, LoopStep> item, std::size_t depth, Cont next)
        : item(std::move(item)), depth(depth), next(std::move(next)) {}
    Frame(const Frame&) = delete;
    Frame& operator=(const Frame&) = delete;
    ~Frame();  // unlinks long chains without recursion
    std::variant<Goal, LoopStep> item;
    std::size_t depth;
    Cont next;
  };
  struct ChoicePoint {
    TrailMark mark;
    Term call;
    std::size_t depth;
    std::size_t next_clause;
    Cont cont;
  };

  bool run();
  bool step(const Frame& frame);
  bool call(const Term& atom, std::size_t depth, const Cont& rest);
  bool try_clauses(const Term& atom, std::size_t depth, std::size_t from, const Cont& rest);
  bool forall(const ForallGoal& g, std::size_t depth, const Cont& rest);
  bool backtrack();
  Solution collect();

  std::shared_ptr<const Program> program_;
  MachineOptions options_;
  std::shared_ptr<OutputSink> out_;
  std::shared_ptr<InputSource> in_;
  const BuiltinTable& builtins_;
  Bindings bind_;
  Trail trail_;
  std::unordered_map<VarId, std::size_t> display_ids_;

  VarList answer_vars_;
  Cont cont_;
  std::vector<ChoicePoint> choices_;
  enum class State { Idle, Fresh, Yielded, Done } state_ = State::Idle;
};

struct QueryResult {
  std::vector<Solution> solutions;
  std::string output;
  /// Set when the query ended with a runtime error; `output` then holds
  /// what was written before it.
  std::optional<std::string> error;
};

struct RunOptions {
  MachineOptions machine;
  std::optional<std::size_t> max_solutions;
  std::string input;
};

QueryResult run_query(std::shared_ptr<const Program> program, const Goal& query, const RunOptions& options = {});

}  // namespace forlog
