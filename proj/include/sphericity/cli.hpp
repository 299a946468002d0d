#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphericity::cli {

/// Full command-line entry point; returns the process exit status.
/// 0 = clean run (H0 not rejected / all checks in tolerance),
/// 2 = `test` rejected H0 at the requested level,
/// 1 = any error (bad input, parse failure, tolerance exceeded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphericity::cli
