#ifndef SPTMBQC_CLI_HPP
#define SPTMBQC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sptmbqc/cocycle.hpp"

namespace sptmbqc {

// Full command surface (build / calibrate / gate / closure / scan). Parses
// args (without the program name), runs the command, writes human-readable
// output to out and diagnostics to err. Returns the process exit code:
// 0 success, 2 validation/config error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// Explicit cocycle tables, schema "sptmbqc.cocycle" version 1. The loader
// rejects unknown schemas, newer versions and tables that fail the cocycle
// condition or normalization.
std::string cocycle_to_json(const Cocycle& omega);
Cocycle cocycle_from_json(const std::string& text);

}  // namespace sptmbqc

#endif
