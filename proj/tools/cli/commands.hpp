// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mod1::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kDiverges = 3,
  kIndeterminate = 4,
  kIoError = 5,
};

/// Run one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of a file's bytes. Throws std::runtime_error if the
/// file cannot be read.
std::string sha256_file(const std::string& path);

/// "%.12g", with negative zero printed as 0.
std::string format_number(double v);

}  // namespace mod1::cli
