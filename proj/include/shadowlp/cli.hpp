#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shadowlp::cli {

/// Exit codes: 0 success, 1 infeasible, 2 usage error, 3 numerical failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shadowlp::cli
