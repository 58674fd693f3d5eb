#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kahler::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitDomain = 2,
  kExitSolver = 3,
  kExitIo = 4,
};

using Json = nlohmann::ordered_json;

/// Raised when a report or table cannot be written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Maps an exception escaping a command to its exit code: solver failures
/// 3, I/O 4, domain and argument errors 2. Anything else counts as a
/// solver failure.
int exit_code_for(const std::exception& e) noexcept;

/// Exit code of a verify run with `failed` asserted checks failing.
int verify_exit_code(int failed) noexcept;

/// Rounds to 12 significant digits; -0 becomes 0, non-finite becomes null.
Json number(double x);

/// "%.12g" rendering with -0 normalized, for CSV cells.
std::string format_number(double x);

/// Runs the kahler-cert command line. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace kahler::cli
