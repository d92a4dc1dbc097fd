#pragma once

#include <string>

namespace cceq::cli {

/// Parsed command line. command is one of solve, statics, calibrate,
/// simulate, check-rd.
struct Options {
    std::string command;
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "both";  // csv | json | both
};

/// Runs one command end to end: reads the JSON config, computes, writes
/// result tables under out_dir. Returns 0 on success, 1 on configuration
/// errors, 2 when any row failed to compute (partial rows are still written
/// with a status column).
int run(const Options& opts);

} // namespace cceq::cli
