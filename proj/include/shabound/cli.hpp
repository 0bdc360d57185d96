#pragma once

#include <iosfwd>

namespace shabound {

/// Exit codes: 0 success, 1 internal error, 2 invalid input, 3 incomplete
/// factorization.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shabound
