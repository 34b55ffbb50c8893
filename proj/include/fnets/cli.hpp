#pragma once

#include <iosfwd>

namespace fnets {

/// Entry point of the `fnets` tool. Returns the process exit code:
/// 0 success, 2 usage error, 3 data error, 4 numerical or solver error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fnets
