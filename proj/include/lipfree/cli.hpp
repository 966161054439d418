#pragma once

#include <iosfwd>

namespace lipfree {

// Exit codes: 0 success, 1 a checked property failed (or lintest found a
// witness), 2 usage, input or format error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lipfree
