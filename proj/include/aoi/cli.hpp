#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aoi {

inline constexpr const char* kToolVersion = "1.0.0";

/// Runs the `aoi` command line.  `args` excludes the program name.  Returns
/// the process exit code: 0 on success, 2 for usage or configuration errors,
/// 1 when a computation fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aoi
