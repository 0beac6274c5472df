#ifndef PEDOPS_CLI_HPP
#define PEDOPS_CLI_HPP

#include <iosfwd>

namespace pedops {

// Runs one CLI invocation. Exit codes: 0 success, 1 usage/validation
// error, 2 verification-suite failure, 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace pedops

#endif
