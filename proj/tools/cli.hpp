#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzsum::cli {

/// Exit codes of the query and repl commands.
enum Exit : int {
  kOk = 0,           ///< results found (or command succeeded)
  kQueryError = 1,   ///< parse or semantic error in the query
  kRepaired = 2,     ///< no results, substitutions proposed
  kEmpty = 3,        ///< no results and no substitution
  kInputError = 4,   ///< bad arguments, files or data
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace fuzzsum::cli
