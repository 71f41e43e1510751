#pragma once

#include <span>
#include <vector>

#include "poolsim/economics.hpp"
#include "poolsim/engine.hpp"

namespace poolsim {

struct KpiReport {
    std::int64_t n_requests = 0;
    std::int64_t n_served = 0;
    std::int64_t n_pooled_served = 0; // requests served in pooled rides
    double service_rate = 0.0;
    std::vector<Cents> per_driver_revenue; // driver-id order
    double revenue_gini = 0.0;
    Cents platform_commission = 0.0;
    double wait_mean_s = 0.0;   // served requests only
    double wait_median_s = 0.0;
    double wait_p90_s = 0.0;
    double occupancy = 0.0;     // traveller in-vehicle time / driver driving time
};

double service_rate(const EventLog& log);           // n_served / n_requests, 0/0 -> 0
double occupancy(const EventLog& log);              // zero driving -> 0
Cents platform_commission(const EventLog& log);     // sum of F_r - R_r

struct WaitStats {
    double mean_s = 0.0;
    double median_s = 0.0;
    double p90_s = 0.0; // linear interpolation between order statistics
};
WaitStats wait_stats(const EventLog& log);

// Sorted-cumulative Gini; all-zero (or empty) input -> 0.
double gini(std::span<const double> values);

// Per-driver revenue in driver-id order plus its Gini.
std::pair<std::vector<Cents>, double> revenue_distribution(const EventLog& log);

KpiReport compute_kpis(const EventLog& log);

} // namespace poolsim
