#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pidpp::cli {

inline constexpr unsigned long long kDefaultSeed = 20240229;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;

// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pidpp::cli
