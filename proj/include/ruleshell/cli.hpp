#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ruleshell {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name).
///
///   check <file>                      parse and lint
///   fmt <file>                        print the canonical form
///   consult <file>                    interactive consultation on in/out
///   run <file> --answers <file>       scripted run, prints the transcript
///   serve [--port N] [--kb-dir DIR]   HTTP session service
int run_cli(const std::vector<std::string> & args, std::istream & in, std::ostream & out,
            std::ostream & err);

}  // namespace ruleshell
