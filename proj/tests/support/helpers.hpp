// Shared test utilities: file loading, traced runs, term encodings.
#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "forlog/engine.hpp"
#include "forlog/reader.hpp"
#include "mgu_oracle.hpp"

namespace forlog::testing {

inline std::string source_path(const std::string& rel) { return std::string(FORLOG_SOURCE_DIR) + "/" + rel; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline SourceUnit load_source(const std::string& rel) {
  return parse_program(read_file(source_path(rel)), ReaderOptions{}, rel);
}

inline std::shared_ptr<const Program> program_of(const std::string& text) {
  return std::make_shared<const Program>(parse_program(text).clauses);
}

/// Observable behaviour of one query: rendered answers, output, error.
struct Observed {
  std::vector<std::string> solutions;
  std::string output;
  std::optional<std::string> error;

  bool operator==(const Observed&) const = default;
};

/// Runs `body` (not closed) and reports the values of `vars` per solution.
inline Observed observe(std::shared_ptr<const Program> program, const Goal& body, const VarList& vars,
                        std::size_t max_solutions = 50, const std::string& input = {}) {
  Observed o;
  auto out = std::make_shared<OutputSink>();
  try {
    Machine m(std::move(program), MachineOptions{true, std::nullopt, nullptr}, out, std::make_shared<InputSource>(input));
    m.start(body);
    while (o.solutions.size() < max_solutions) {
      auto s = m.next();
      if (!s) break;
      std::string line;
      for (const auto& v : vars) line += v.name + "=" + m.render(m.resolve(Term(v)), TermStyle::Source) + ";";
      o.solutions.push_back(line);
    }
  } catch (const RuntimeError& e) {
    o.error = e.what();
  }
  o.output = out->text();
  return o;
}

/// Encodes a term over {a, b, f/1, g/2, x, y} for the unification oracle.
inline mgu::Code encode(const Term& t, VarId x, VarId y) {
  if (auto* v = t.get_if<Var>()) {
    if (v->id == x) return mgu::Code{mgu::X};
    if (v->id == y) return mgu::Code{mgu::Y};
    throw std::logic_error("unexpected variable in encoded term");
  }
  if (auto* a = t.get_if<Atom>()) return mgu::Code{a->name == "a" ? mgu::A : mgu::B};
  const auto& c = t.as<Compound>();
  mgu::Code out{c.functor == "f" ? mgu::F : mgu::G};
  for (const auto& arg : c.args) out += encode(arg, x, y);
  return out;
}

inline Term decode(const mgu::Code& code, std::size_t& pos, const Term& x, const Term& y) {
  auto s = code[pos++];
  switch (s) {
    case mgu::A: return Term::atom("a");
    case mgu::B: return Term::atom("b");
    case mgu::X: return x;
    case mgu::Y: return y;
    case mgu::F: return Term::compound("f", {decode(code, pos, x, y)});
    default: {
      Term l = decode(code, pos, x, y);
      Term r = decode(code, pos, x, y);
      return Term::compound("g", {l, r});
    }
  }
}

}  // namespace forlog::testing
