#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subtrace {

// Full command-line front end; args exclude the program name. Returns the
// process exit code: 0 success, 1 verification failure, 2 usage error,
// 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace subtrace
