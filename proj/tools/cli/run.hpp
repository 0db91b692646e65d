#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "fracwave/error.hpp"

namespace fracwave::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3, kIo = 4 };

ExitCode exit_code_for(ErrorCode code) noexcept;

// Runs one experiment. Writes BASE.json (summary, always) and BASE.csv (table,
// when the command has one) through temp-file renames when cfg.output is set,
// and prints the summary JSON to `out`. Library errors propagate.
void run(const ExperimentConfig& cfg, std::ostream& out);

// parse_config + run with every failure turned into an exit status and a
// one-line JSON error object on `err`.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracwave::cli
