#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semireal {

// Full command-line entry point, callable in-process so determinism tests can
// capture output byte-for-byte. Returns the process exit code: 0 success,
// 1 domain error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace semireal
