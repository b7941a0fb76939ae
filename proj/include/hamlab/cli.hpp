#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hamlab {

// Runs the command-line interface on explicit streams (testable without a
// process boundary).  `args` excludes the program name.  Returns the process
// exit status: 0 success, 1 domain/capability errors, 2 malformed flags or
// malformed input data.
int cliMain(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace hamlab
