#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gbessel/sympoly.hpp"

namespace gbessel::cli {

/// A number read from a flag: decimals and p/q fractions are kept exactly.
struct Number {
  Rational exact;
  double value = 0.0;
};

/// Accepts integers, decimals with optional exponent, and p/q. Throws
/// InvalidInput naming `flag` on anything else.
Number parse_number(const std::string& text, const std::string& flag);
std::vector<Number> parse_list(const std::string& text, const std::string& flag);

/// Runs one command line (args[0] is the program name) and returns the exit
/// code: 0 success, 1 verification failure, 2 invalid input. The report goes
/// to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gbessel::cli
