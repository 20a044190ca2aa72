// Command-line front end. run() is the whole program (main is a one-liner),
// exposed here so tests can drive subcommands in-process and check exit
// codes: 0 success, 1 runtime failure (I/O, oracle mismatch), 2 usage or
// config error.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ddfrot::cli {

extern const char kVersion[];

int run(int argc, const char* const* argv);

// Convenience overload for in-process invocation; args exclude argv[0].
int run(const std::vector<std::string>& args);

// Numeric list syntax shared by the grid flags: comma-separated scalars
// and/or a:b:c ranges (from a to b in steps of c, endpoint included when it
// lands within half a step). Throws std::invalid_argument on bad syntax.
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

// Shortest round-trippable decimal with 10 significant digits; used for
// every floating-point field so output bytes are locale-independent.
std::string format_sig10(double value);

}  // namespace ddfrot::cli
