// cli.hpp — Entry point of the `ramsey` command-line tool.
//
// Exit codes: 0 success, 1 usage or validation error, 2 numerical failure
// (including a failed selftest).

#pragma once

#include <iosfwd>

namespace ramsey::cli {

int cli_main(int argc, char** argv);

// Same, with explicit streams (used by the tests).
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace ramsey::cli
