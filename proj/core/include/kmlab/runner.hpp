// Scenario orchestration: executes one configured run (solve, oracle
// comparison, estimate verification, contraction/Lipschitz probes, or a
// parameter sweep) and writes byte-stable output files.

#pragma once

#include <string>
#include <vector>

#include "kmlab/config.hpp"

namespace kmlab {

struct RunOptions {
    std::string out_dir = ".";
    bool dump_fields = false;
};

struct RunRecord {
    std::string config_echo;            // exact textual echo of the effective config
    std::string input_hash;             // content hash of the echo
    std::vector<std::string> outputs;   // files written
    double duration_seconds = 0.0;
    bool all_pass = false;
};

// Canonical textual form of a config (itself parseable).
std::string echo_config(const RunConfig& config);

RunRecord run(const RunConfig& config, const RunOptions& options);

}  // namespace kmlab
