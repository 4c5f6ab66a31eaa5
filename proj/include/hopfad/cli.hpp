#pragma once

#include <string>
#include <vector>

#include "hopfad/report.hpp"

namespace hopfad {

struct CliResult {
  int exit_code = 0;
  std::string out;  // report JSON or human table
  std::string err;  // diagnostics
};

// Runs the command-line driver on the given arguments (excluding the program
// name).  Never throws: errors come back as exit code 3 with a diagnostic.
// Exit codes: 0 all checks pass; 1 some check failed; 2 no failures but
// evidence or budget-limited outcomes; 3 usage or parse error.
CliResult run_cli(const std::vector<std::string>& args);

// Process entry point: forwards to run_cli and prints the streams.
int cli_main(int argc, char** argv);

}  // namespace hopfad
