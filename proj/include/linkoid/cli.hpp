#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linkoid::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,      // selftest failure or an unexpected error
  exit_input = 2,        // unreadable or malformed input, bad arguments
  exit_cap = 3,          // crossing cap exceeded
  exit_degenerate = 4,   // degenerate projection under --strict
};

// args[0] is the program name. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace linkoid::cli
