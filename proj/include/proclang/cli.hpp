#pragma once

#include <iosfwd>

namespace proclang {

// Exit codes: 0 ok, 1 failed assertion or invalid input, 2 exploration
// truncated, 64 usage error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace proclang
