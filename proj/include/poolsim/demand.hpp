#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poolsim/network.hpp"

namespace poolsim {

struct TripRequest {
    std::int64_t id = 0;
    NodeId origin = 0;
    NodeId destination = 0;
    double request_time_s = 0.0;
    double patience_s = 0.0;
    // Cached shortest-path values for origin -> destination; every fare and
    // utility below derives from these two numbers.
    double direct_distance_m = 0.0;
    double direct_time_s = 0.0;
};

struct DemandConfig {
    double rate_per_hour = 400.0;
    double horizon_s = 14400.0;
    double patience_s = 300.0;
    std::uint64_t seed = 0;
};

// Poisson arrivals (exponential inter-arrival, mean 3600/rate seconds) with
// origin/destination uniform over ordered distinct node pairs. Output is
// sorted by request_time and fully determined by cfg.seed.
std::vector<TripRequest> generate_demand(const Network& net, const DemandConfig& cfg);

// CSV import, header `request_id,origin_id,destination_id,request_time_s,patience_s`.
// Rows are returned time-sorted (stable on ties); direct distance/time are
// recomputed from the network, never trusted from the file.
std::vector<TripRequest> load_demand(const Network& net, const std::string& path);

// id -> request view over an externally owned batch.
class RequestLookup {
public:
    explicit RequestLookup(const std::vector<TripRequest>& requests);
    const TripRequest& at(std::int64_t id) const; // std::out_of_range on miss

private:
    std::unordered_map<std::int64_t, const TripRequest*> by_id_;
};

} // namespace poolsim
