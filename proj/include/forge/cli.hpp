#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace forge {

/// Runs the forge command line (arguments without the program name).
/// Exit codes: 0 success, 1 property falsified, 2 invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& data);

}  // namespace forge
