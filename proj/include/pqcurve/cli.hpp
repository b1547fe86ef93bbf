#pragma once

#include <iosfwd>

namespace pqcurve {

/// Exit codes: 0 success, 1 input error, 2 numeric failure after the full
/// precision ladder.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pqcurve
