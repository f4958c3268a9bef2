// Command-line front end. Exit codes: 0 success, 1 malformed JSON, 2 search
// failure, 3 validation failure, 4 bad command line.
#ifndef NORMALBASIS_CLI_HPP
#define NORMALBASIS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace normalbasis {

enum ExitCode : int { kExitOk = 0, kExitBadJson = 1, kExitSearchFailure = 2, kExitInvalid = 3, kExitUsage = 4 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normalbasis

#endif
