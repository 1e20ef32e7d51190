#pragma once

#include <istream>
#include <ostream>

namespace rotset::cli {

/// Exit codes: 0 success, 2 invalid input or command line, 3 internal inconsistency.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rotset::cli
