#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qharm::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes: 0 success, 1 a battery recorded a violation or an unexpected
/// verdict, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Parses "1.5", "4/3", "1e-3".
double parse_real(const std::string& text);
/// Comma-separated parse_real values.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace qharm::cli
