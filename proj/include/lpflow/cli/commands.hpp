#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpflow::cli {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kPass = 0,
  kVerdictFail = 1,
  kUsage = 2,
  kBadInput = 3,
};

/// Parses argv-style arguments (without the program name) and runs one of
/// simulate, synth, scan, verify, traject, report, config.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpflow::cli
