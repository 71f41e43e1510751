#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "poolsim/economics.hpp"

namespace poolsim::cli {

// Exit codes shared by both commands: 0 success, 2 invalid config,
// 3 I/O failure; run_sweep returns 1 when any cell failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCellFailures = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitIo = 3;

// Runs one scenario and writes events.csv, outcomes.csv, drivers.csv and
// kpi.json into out_dir (created if missing).
int run_scenario_command(const std::string& config_path, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override,
                         std::optional<PricingPolicy> policy_override);

// Runs a sweep and writes summary.csv into out_dir.
int run_sweep_command(const std::string& sweep_path, const std::string& out_dir,
                      int parallelism);

} // namespace poolsim::cli
