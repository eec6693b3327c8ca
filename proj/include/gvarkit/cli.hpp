#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace gvarkit {

/// Runs one CLI invocation. `args` excludes the program name. Returns the
/// process exit code; errors print a machine-readable JSON record to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace gvarkit
