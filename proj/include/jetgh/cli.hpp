#pragma once

// Command-line scenario runner. Every subcommand takes free-form tokens:
//   name{key=value,...}   a family spec (first fills `a`, second fills `b`)
//   key=value             a setting
//   word                  a flag (`log`, `reflect`) or, for `hausdorff`, a CSV path
// and optionally --config FILE with one key=value per line ('#' comments).
// Command-line tokens override file entries.

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace jetgh {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitConstruction = 3,
  kExitNumeric = 4,
  kExitIo = 5,
};

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> values;
  // Where each value came from, for diagnostics ("command line", "cfg.txt:3").
  std::map<std::string, std::string> origin;
  std::set<std::string> flags;
  std::vector<std::string> inputs;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  double number(const std::string& key) const;
  long integer(const std::string& key) const;

  // "jetgh <subcommand> key=value ... flags", keys sorted; used as the CSV
  // comment line and in JSON output.
  std::string describe() const;
};

const std::vector<std::string>& subcommand_names();

// Applies the config file (if any) and then the tokens; fills defaults and
// validates keys against the subcommand. Throws ConfigError.
RunConfig parse_run_config(const std::string& subcommand, const std::vector<std::string>& tokens,
                           const std::string& config_path = {});
void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& name);
void apply_tokens(RunConfig& cfg, const std::vector<std::string>& tokens,
                  const std::string& where = "command line");
void finalize_config(RunConfig& cfg);

// Runs one subcommand, writing to `out` unless the config names a file.
void run_scenario(const RunConfig& cfg, std::ostream& out);

// Maps an exception onto the documented exit codes.
int exit_code_for(const std::exception& e);

// Full entry point: argument parsing, dispatch, diagnostics on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetgh
