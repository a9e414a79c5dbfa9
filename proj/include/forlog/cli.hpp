// Command-line front end: `run`, `repl` and `translate` subcommands.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace forlog::cli {

struct Config {
  std::vector<std::string> files;
  std::optional<std::string> query;
  bool occurs_check = false;
  std::optional<std::size_t> max_solutions;
  std::optional<std::size_t> depth_limit;
  bool trace = false;
  std::optional<std::string> input_script;
};

enum ExitCode : int { kYes = 0, kNo = 1, kError = 2 };

int cmd_run(const Config& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_repl(const Config& config, std::istream& in, std::ostream& out, std::ostream& err);
int cmd_translate(const Config& config, std::ostream& out, std::ostream& err);

/// Parses arguments and dispatches to a subcommand.
int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace forlog::cli
