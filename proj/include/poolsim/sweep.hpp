#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poolsim/engine.hpp"
#include "poolsim/kpi.hpp"

namespace poolsim {

struct SweepSpec {
    std::vector<int> driver_counts;
    std::vector<double> request_rates;      // requests per hour
    std::vector<PricingPolicy> policies;
    std::vector<std::uint64_t> seeds;       // >= 1 entries
    ScenarioConfig base;                    // per-cell overrides applied on top
};

struct SweepRow {
    PricingPolicy policy = PricingPolicy::SoloOnly;
    int n_drivers = 0;
    double request_rate = 0.0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error; // empty when ok
    KpiReport kpi;
};

SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec load_sweep_spec(const std::string& path);

// Runs every (policy, drivers, rate, seed) cell, up to `parallelism` at a
// time. Row order is (policy, n_drivers, request_rate, seed) regardless of
// scheduling; failed cells carry their error and do not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int parallelism);

// `policy,n_drivers,req_rate,seed,service_rate,gini,commission_eur,wait_mean_s,occupancy,status`
void write_sweep_summary_csv(const std::vector<SweepRow>& rows, const std::string& path);

} // namespace poolsim
