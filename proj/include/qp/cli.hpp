#pragma once

#include <iosfwd>

namespace qp {

// Command-line front end; returns the process exit code
// (0 ok / probable, 1 FAIL, 2 ERROR or bad usage).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qp
