#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "poolsim/demand.hpp"
#include "poolsim/network.hpp"

namespace poolsim {

enum class RideKind { Solo, Pooled };

struct TravellerPrefs {
    double value_of_time_eur_s = 0.0025; // 9 eur/h
    double pooled_time_factor = 1.3;     // perceived-time multiplier when sharing, >= 1
};

struct Stop {
    enum class Kind { Pickup, Dropoff };
    Kind kind;
    std::int64_t request_id;
    NodeId node;
};

// Per-member timing of one ride, offsets relative to the first stop.
struct MemberPlan {
    std::int64_t request_id;
    double pickup_offset_s;  // first stop -> this member's pickup
    double in_vehicle_s;     // pickup -> dropoff along the stop sequence
    double wait_offset_s;    // extra wait beyond own request at the earliest
                             // feasible joint departure (0 for solo rides)
};

struct RideCandidate {
    std::int64_t id = -1;              // position in the enumeration output
    RideKind kind = RideKind::Solo;
    std::vector<std::int64_t> members; // request ids, sorted ascending
    std::vector<Stop> stops;           // pickups precede own dropoffs
    std::vector<MemberPlan> plans;     // aligned with members
    double service_distance_m = 0.0;   // first stop -> last stop along the route
    double service_time_s = 0.0;

    const MemberPlan& plan_of(std::int64_t request_id) const; // invalid_argument on miss
};

struct ShareabilityConfig {
    int max_degree = 3;            // K_max, >= 1
    double discount = 0.25;        // pooled fare discount, [0, 1)
    double fare_per_km = 1.5;      // traveller-facing fare rate, enters the utility
    double pairing_window_s = 600; // max request-time spread inside one pooled ride
};

// Euro-equivalent utility of one ride for one of its members; higher is
// better. Solo: -fare*l - vot*t. Pooled: -(1-discount)*fare*l
// - vot*pooled_time_factor*(in_vehicle + wait_offset).
double traveller_utility(const TripRequest& req, const TravellerPrefs& prefs,
                         const RideCandidate& ride, double fare_per_km, double discount);

// The solo ride every request always has.
RideCandidate make_solo_candidate(const TripRequest& req);

// Every attractive stop ordering for this exact member set (>= 2 members,
// sorted by id). A ride is attractive when each member weakly prefers it to
// their solo ride; ties count as attractive. Returns {} when the member set
// violates the pairing window or no ordering survives.
std::vector<RideCandidate> attractive_pooled_rides(std::span<const TripRequest* const> members,
                                                   const Network& net,
                                                   const TravellerPrefs& prefs,
                                                   const ShareabilityConfig& cfg);

// Exact enumeration of all attractive rides of degree 1..max_degree for a
// batch: one solo ride per request, plus every attractive (member set, stop
// ordering) pair. Degree-k sets are extended only from attractive degree-(k-1)
// sets, which is exhaustive because dropping the last-picked member of an
// attractive ride leaves an attractive ride (the stop-sequence prefix is
// unchanged and detours only shrink). Output is sorted by
// (degree, member ids, stop sequence) and ids are assigned by position.
std::vector<RideCandidate> enumerate_rides(std::span<const TripRequest> batch,
                                           const Network& net,
                                           const TravellerPrefs& prefs,
                                           const ShareabilityConfig& cfg);

// Drop every candidate that contains a served member.
std::vector<RideCandidate> prune_served(std::vector<RideCandidate> candidates,
                                        const std::vector<std::int64_t>& served_ids);

// Optional dump: `ride_id,kind,member_ids,service_distance_m,service_time_s`,
// member ids ;-separated.
void write_ride_set_csv(const std::vector<RideCandidate>& candidates, const std::string& path);

} // namespace poolsim
