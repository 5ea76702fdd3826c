#pragma once

#include "rabi_qpt/experiments.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rabi_qpt::cli {

/// Entry point of the rabi-qpt command-line tool. Results go to `out` (or
/// the --output file), diagnostics and the machine-readable error summary
/// to `err`. Returns the process exit code: 0 iff there were no hard errors
/// and no failed validation checks.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "name:start:stop:count" with count evenly spaced values including both
/// ends (count == 1 gives just start). Throws InvalidArgument.
SweepAxis parse_axis(const std::string& text);

/// Comma-separated non-negative integers, e.g. "0,1".
std::vector<int> parse_int_list(const std::string& text);

/// Comma-separated quantity names; "all" selects every quantity.
std::vector<Quantity> parse_quantity_list(const std::string& text);

/// Shortest round-trippable form at 12 significant digits.
std::string format_number(double value);

}  // namespace rabi_qpt::cli
