#pragma once

// Command-line front end. Exit codes: 0 success, 1 invariant or numerical
// failure, 2 parse or schema error, 3 point outside the domain, 4 matrices that
// do not commute.

#include <ostream>

namespace symbidisc {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symbidisc
