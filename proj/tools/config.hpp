#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "aelt/lagrangian.hpp"
#include "aelt/solvers.hpp"

namespace aelt::cli {

// Flat sectioned key/value configuration. Unknown sections or keys are
// rejected; the seed is mandatory (config [run] seed or --seed).
struct ProblemConfig {
    std::string problem = "example5";
    double g_const = -1.0;  // >= 0 replaces the forcing envelope with a constant

    double grid_T = 1.0;
    int grid_n = 64;

    SolverParams solver;

    long check_samples = 1500;
    double check_box = 3.0;
    int legacy_r0_points = 100;

    int scan_resolution = 400;
    ScanBox scan_box;
    int scan_directions = 200;

    std::uint64_t seed = 0;
    bool seed_set = false;

    std::string out_dir = "out";

    // Flat echo of every effective key, for the self-contained report.
    std::map<std::string, std::string> echo() const;
};

struct ConfigError : Error {
    using Error::Error;
};

ProblemConfig parse_config_file(const std::string& path);

// Problem instance with the config's overrides applied.
Lagrangian configured_problem(const ProblemConfig& cfg);

}  // namespace aelt::cli
