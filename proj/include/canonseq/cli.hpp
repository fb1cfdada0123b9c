#pragma once

#include <string>
#include <vector>

namespace canonseq::cli {

// Exit codes: 0 success / positive verdict, 1 negative verdict, 2 invalid
// input or incoherent system where coherence is required, 64 usage error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

struct CommandResult {
  int exit_code = 0;
  std::string verdict;  // valid, invalid, coherent, incoherent, provable,
                        // unprovable, accepted, rejected, legal, illegal,
                        // found, none, error
  std::string output;   // human-readable or JSON, already formatted
};

// Dispatches one subcommand; used by `run` and the batch runner.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace canonseq::cli
