#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace linkforge::cli {

// Runs one subcommand; args excludes the program name. JSON goes to `out`,
// a human summary to `err`. Returns 0 on success, 1 on a domain or input
// error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linkforge::cli
