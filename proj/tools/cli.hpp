#pragma once

#include <iosfwd>

namespace parrondo::cli {

// Entry point of the command-line tool, separated from main() so tests can
// drive it in-process with captured streams. Returns the process exit code:
// 0 success, 2 usage error, 1 computational failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parrondo::cli
