#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "poolsim/cli.hpp"
#include "poolsim/economics.hpp"

int main(int argc, char** argv) {
    CLI::App app{"poolsim - two-sided ride-pooling market simulator"};

    std::string config_path, sweep_path, out_dir;
    std::int64_t seed = -1;
    std::string policy_name;
    int parallelism = 1;

    auto* config_opt = app.add_option("--config", config_path, "scenario config (JSON)");
    auto* sweep_opt = app.add_option("--sweep", sweep_path, "sweep spec (JSON)");
    app.add_option("--out", out_dir, "output directory")->required();
    auto* seed_opt = app.add_option("--seed", seed, "override the scenario seed");
    auto* policy_opt =
        app.add_option("--policy", policy_name,
                       "override the pricing policy {solo_only|forced_pooling|profit_max}");
    app.add_option("--parallelism", parallelism, "concurrent sweep cells")
        ->check(CLI::PositiveNumber);
    config_opt->excludes(sweep_opt);

    CLI11_PARSE(app, argc, argv);

    if (config_path.empty() == sweep_path.empty()) {
        std::cerr << "poolsim: error: exactly one of --config or --sweep is required\n";
        return poolsim::cli::kExitBadConfig;
    }

    if (!sweep_path.empty()) {
        if (*seed_opt || *policy_opt) {
            std::cerr << "poolsim: error: --seed/--policy overrides apply to --config runs\n";
            return poolsim::cli::kExitBadConfig;
        }
        return poolsim::cli::run_sweep_command(sweep_path, out_dir, parallelism);
    }

    std::optional<std::uint64_t> seed_override;
    if (*seed_opt) {
        if (seed < 0) {
            std::cerr << "poolsim: error: --seed must be >= 0\n";
            return poolsim::cli::kExitBadConfig;
        }
        seed_override = static_cast<std::uint64_t>(seed);
    }
    std::optional<poolsim::PricingPolicy> policy_override;
    if (*policy_opt) {
        policy_override = poolsim::parse_policy(policy_name);
        if (!policy_override) {
            std::cerr << "poolsim: error: unknown policy '" << policy_name << "'\n";
            return poolsim::cli::kExitBadConfig;
        }
    }
    return poolsim::cli::run_scenario_command(config_path, out_dir, seed_override, policy_override);
}
