// Command-line front end: solve, bench, verify.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasesat {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: solve 10/20/0, bench 0, verify 0/1, usage or I/O
/// errors 2.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasesat
