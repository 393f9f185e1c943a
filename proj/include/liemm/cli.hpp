#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "liemm/report.hpp"

namespace liemm {

// Exit codes: 0 pass, 1 verification failure, 2 inconclusive, 3 usage or config error.
inline constexpr int kExitUsage = 3;

const std::vector<std::string>& subcommand_names();

// Runs one subcommand; throws std::invalid_argument on bad configuration.
SubResult run_subcommand(const RunConfig& c);

// Full run: report assembly, rendering, and --output handling.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

// argv[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liemm
