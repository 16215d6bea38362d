#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdpp/thresholds.hpp"

namespace bdpp {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;  // validation or usage failure
inline constexpr int kExitIo = 3;          // missing file, parse error
inline constexpr int kExitNumerical = 4;   // simulation / numerical failure

struct RunConfig {
    std::string scenario_path;
    double horizon = 1e4;
    double dt = 1e-3;
    double burn_in_fraction = 0.1;
    int batches = 20;
    int replicas = 32;
    std::uint64_t base_seed = 12345;
    std::string out_dir = ".";
    // sweep-specific
    std::string sweep_param;               // regimes[k].name or generator[i][j], 1-based
    std::vector<double> sweep_values;
    // moments-specific
    double moment_p = 2.0;
};

EstimationSettings settings_from_config(const RunConfig& config);

// Each command returns a process exit code and writes its artifacts (plus a
// run_config.json echo with the seed list) under config.out_dir.
int cmd_validate(const RunConfig& config);
int cmd_classify(const RunConfig& config);
int cmd_simulate(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_moments(const RunConfig& config);

// Applies one swept value to a copy of the scenario. Off-diagonal generator
// entries rebalance the row diagonal to stay conservative; diagonal entries
// cannot be swept. Throws InvalidArgument on a malformed path.
Scenario apply_parameter(const Scenario& base, const std::string& param_path, double value);

} // namespace bdpp
