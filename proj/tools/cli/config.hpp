#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fracwave::cli {

// A parsed and validated experiment. `params` holds every key the command
// understands in canonical text form (numbers printed with %.17g), defaults
// filled in; unset optional keys are absent.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::string output;  // base path of the outputs; empty writes nothing
  bool allow_nontempered = false;
  std::uint64_t fingerprint = 0;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;  // comma list
  // Sample times from `t` (comma list) or `t-geom` (lo:hi:count).
  std::vector<double> times() const;
};

// Thrown by parse_config for --help; carries the text to print.
struct HelpRequested {
  std::string text;
};

const std::vector<std::string>& command_names();

// Arguments without the program name: `<command> [--key value ...]`, or
// `--config FILE` alone when the file names the command. Flags override the
// file. Throws Error(UsageError) for malformed input and Error(ValidationError)
// for values outside their domain.
ExperimentConfig parse_config(const std::vector<std::string>& args);

// Line-oriented `key = value`; '#' starts a comment. Throws IoError/UsageError.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace fracwave::cli
