#pragma once

// Command-line front end. Exit codes: 0 success, 2 argument or precondition
// failure, 1 numerical failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace maxsmooth::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace maxsmooth::cli
