#pragma once

#include <ostream>
#include <vector>

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace necklace::cli {

std::vector<Artifact> cmd_bands(const RunConfig& cfg);
std::vector<Artifact> cmd_map(const RunConfig& cfg);
std::vector<Artifact> cmd_homoclinic(const RunConfig& cfg);
std::vector<Artifact> cmd_boundstate(const RunConfig& cfg);
/// Sets `failed` when any job raised an error.
std::vector<Artifact> cmd_sweep(const RunConfig& cfg, bool& failed);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 usage, 3 numerical failure or failed checks, 4 I/O).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace necklace::cli
