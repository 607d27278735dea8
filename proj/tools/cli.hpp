#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace llrss::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNotConverged = 3 };

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name; `in` backs `--input -`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace llrss::cli
