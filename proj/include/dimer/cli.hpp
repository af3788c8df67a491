#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dimer::cli {

enum Exit { Ok = 0, Usage = 1, Numerical = 2, Validation = 3 };

// runs the command line; tables go to `out` unless --out names a file
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dimer::cli
