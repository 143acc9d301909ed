#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace chebydyn::tools {

// args excludes the program name. Exit codes: 0 success, 1 verification or
// runtime failure, 2 flag errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chebydyn::tools
