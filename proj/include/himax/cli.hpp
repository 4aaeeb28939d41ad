#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace himax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one command line (program name excluded). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on usage errors, 2 on data
/// or domain errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace himax::cli
