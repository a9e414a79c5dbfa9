#include "forlog/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "forlog/engine.hpp"
#include "forlog/reader.hpp"
#include "forlog/translate.hpp"

namespace forlog::cli {

namespace {

struct Loaded {
  std::shared_ptr<const Program> program;
  std::vector<Goal> queries;
};

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Prints a diagnostic and returns nullopt when a file is missing or malformed.
std::optional<Loaded> load(const Config& config, std::ostream& err) {
  auto program = std::make_shared<Program>();
  Loaded loaded;
  for (const auto& path : config.files) {
    auto text = slurp(path);
    if (!text) {
      err << path << ": cannot open file\n";
      return std::nullopt;
    }
    try {
      // Loaded files may contain translator output, which uses reserved names.
      SourceUnit unit = parse_program(*text, ReaderOptions{.allow_reserved = true}, path);
      for (auto& c : unit.clauses) program->add(std::move(c));
      for (auto& q : unit.queries) loaded.queries.push_back(std::move(q));
    } catch (const ParseError& e) {
      err << path << ":" << e.what() << '\n';
      return std::nullopt;
    }
  }
  loaded.program = std::move(program);
  return loaded;
}

MachineOptions machine_options(const Config& config, std::ostream& err) {
  MachineOptions m;
  m.occurs_check = config.occurs_check;
  m.depth_limit = config.depth_limit;
  if (config.trace) m.trace = &err;
  return m;
}

std::shared_ptr<InputSource> input_source(const Config& config, std::istream& in, std::ostream& err) {
  if (config.input_script) {
    auto text = slurp(*config.input_script);
    if (!text) {
      err << *config.input_script << ": cannot open input script\n";
      return nullptr;
    }
    return std::make_shared<InputSource>(std::move(*text));
  }
  return std::make_shared<InputSource>(std::string{}, [&in]() -> std::optional<std::string> {
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    return line;
  });
}

void print_bindings(OutputSink& sink, const Solution& s) {
  if (!sink.at_line_start()) sink.write("\n");
  for (const auto& b : s.bindings) sink.write(b.name + " = " + b.text + "\n");
}

void finish(OutputSink& sink, const char* word) {
  if (!sink.at_line_start()) sink.write("\n");
  sink.write(word);
  sink.write("\n");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

int cmd_run(const Config& config, std::istream& in, std::ostream& out, std::ostream& err) {
  auto loaded = load(config, err);
  if (!loaded) return kError;
  std::vector<Goal> queries;
  if (config.query) {
    try {
      queries.push_back(parse_goal(*config.query));
    } catch (const ParseError& e) {
      err << "query:" << e.what() << '\n';
      return kError;
    }
  } else {
    queries = loaded->queries;
  }
  auto input = input_source(config, in, err);
  if (!input) return kError;
  auto sink = std::make_shared<OutputSink>(out);

  int status = kYes;
  for (const auto& q : queries) {
    try {
      Machine m(loaded->program, machine_options(config, err), sink, input);
      m.start(q);
      std::size_t count = 0;
      bool shown = false;
      while (!config.max_solutions || count < *config.max_solutions) {
        auto s = m.next();
        if (!s) break;
        ++count;
        if (!s->bindings.empty()) {
          if (shown) sink->write(";\n");
          print_bindings(*sink, *s);
          shown = true;
        }
      }
      finish(*sink, count ? "yes" : "no");
      if (!count) status = kNo;
    } catch (const RuntimeError& e) {
      out.flush();
      err << "error: " << e.what() << '\n';
      return kError;
    }
  }
  return status;
}

int cmd_repl(const Config& config, std::istream& in, std::ostream& out, std::ostream& err) {
  auto loaded = load(config, err);
  if (!loaded) return kError;
  auto input = input_source(config, in, err);
  if (!input) return kError;
  auto sink = std::make_shared<OutputSink>(out);

  for (;;) {
    out << "?- " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << '\n';
      return kYes;
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line == "halt." || line == "halt") return kYes;
    Goal goal;
    try {
      goal = parse_goal(line);
    } catch (const ParseError& e) {
      err << "syntax error: " << e.what() << '\n';
      continue;
    }
    try {
      Machine m(loaded->program, machine_options(config, err), sink, input);
      m.start(goal);
      for (;;) {
        auto s = m.next();
        if (!s) {
          finish(*sink, "no");
          break;
        }
        if (s->bindings.empty()) {
          finish(*sink, "yes");
          break;
        }
        print_bindings(*sink, *s);
        out << std::flush;
        std::string reply;
        if (!std::getline(in, reply) || trim(reply) != ";") {
          finish(*sink, "yes");
          break;
        }
      }
    } catch (const RuntimeError& e) {
      if (!sink->at_line_start()) sink->write("\n");
      out.flush();
      err << "error: " << e.what() << '\n';
    }
  }
}

int cmd_translate(const Config& config, std::ostream& out, std::ostream& err) {
  auto loaded = load(config, err);
  if (!loaded) return kError;
  TranslationUnit unit = eliminate_foralls(*loaded->program, loaded->queries);
  out << pretty_print(unit.translated, unit.queries);
  return kYes;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horn clause interpreter with bounded-quantifier (for-loop) goals"};
  app.require_subcommand(1);
  Config config;

  auto add_engine_flags = [&config](CLI::App* sub) {
    sub->add_option("files", config.files, "Program files (.fl)");
    sub->add_flag("--occurs-check", config.occurs_check, "Enable the occurs check in unification");
    sub->add_option("--max-solutions", config.max_solutions, "Stop after N solutions per query");
    sub->add_option("--depth-limit", config.depth_limit, "Abort when resolution depth exceeds N");
    sub->add_option("--input", config.input_script, "File supplying terms for read/1");
    sub->add_flag("--trace", config.trace, "Trace predicate calls on stderr");
  };

  auto* run = app.add_subcommand("run", "Run embedded queries or the -q query");
  add_engine_flags(run);
  run->add_option("-q,--query", config.query, "Query to run instead of the embedded ones");
  auto* repl = app.add_subcommand("repl", "Interactive top level");
  add_engine_flags(repl);
  auto* translate = app.add_subcommand("translate", "Print the program with loops turned into recursion");
  translate->add_option("files", config.files, "Program files (.fl)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kYes : kError;
  }

  if (run->parsed()) return cmd_run(config, in, out, err);
  if (repl->parsed()) return cmd_repl(config, in, out, err);
  return cmd_translate(config, out, err);
}

}  // namespace forlog::cli
