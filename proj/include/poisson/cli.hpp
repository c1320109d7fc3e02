#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace poisson {

// Exit codes: 0 pass, 1 mathematical failure, 2 input error.
// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poisson
