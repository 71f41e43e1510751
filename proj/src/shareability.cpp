#include "poolsim/shareability.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

namespace poolsim {

namespace {

double solo_utility(const TripRequest& req, const TravellerPrefs& prefs, double fare_per_km) {
    return -fare_per_km * (req.direct_distance_m / 1000.0) -
           prefs.value_of_time_eur_s * req.direct_time_s;
}

double pooled_utility(const TripRequest& req, const TravellerPrefs& prefs, double fare_per_km,
                      double discount, double in_vehicle_s, double wait_offset_s) {
    return -fare_per_km * (1.0 - discount) * (req.direct_distance_m / 1000.0) -
           prefs.value_of_time_eur_s * prefs.pooled_time_factor * (in_vehicle_s + wait_offset_s);
}

// Stop tokens of one ordering: pickups/dropoffs by member index.
struct StopToken {
    int member; // index into the sorted member array
    Stop::Kind kind;
};

// All stop orderings where each pickup precedes its own dropoff, generated in
// a fixed lexicographic token order (pickups rank before dropoffs, members by
// index). 2k stops -> (2k)! / 2^k sequences.
void collect_orderings(int degree, std::vector<StopToken>& prefix, std::vector<bool>& picked,
                       std::vector<bool>& dropped, std::vector<std::vector<StopToken>>& out) {
    if (static_cast<int>(prefix.size()) == 2 * degree) {
        out.push_back(prefix);
        return;
    }
    for (int m = 0; m < degree; ++m) {
        if (picked[m])
            continue;
        picked[m] = true;
        prefix.push_back({m, Stop::Kind::Pickup});
        collect_orderings(degree, prefix, picked, dropped, out);
        prefix.pop_back();
        picked[m] = false;
    }
    for (int m = 0; m < degree; ++m) {
        if (!picked[m] || dropped[m])
            continue;
        dropped[m] = true;
        prefix.push_back({m, Stop::Kind::Dropoff});
        collect_orderings(degree, prefix, picked, dropped, out);
        prefix.pop_back();
        dropped[m] = false;
    }
}

std::vector<std::vector<StopToken>> orderings_for_degree(int degree) {
    std::vector<std::vector<StopToken>> out;
    std::vector<StopToken> prefix;
    std::vector<bool> picked(degree, false), dropped(degree, false);
    collect_orderings(degree, prefix, picked, dropped, out);
    return out;
}

// Evaluates one (member set, ordering) pair; returns the candidate when every
// member weakly prefers it to their solo ride.
std::optional<RideCandidate> evaluate_ordering(std::span<const TripRequest* const> members,
                                               const std::vector<StopToken>& tokens,
                                               const Network& net, const TravellerPrefs& prefs,
                                               const ShareabilityConfig& cfg) {
    const int degree = static_cast<int>(members.size());
    RideCandidate ride;
    ride.kind = RideKind::Pooled;
    ride.stops.reserve(tokens.size());
    for (const StopToken& tok : tokens) {
        const TripRequest& req = *members[tok.member];
        ride.stops.push_back({tok.kind, req.id,
                              tok.kind == Stop::Kind::Pickup ? req.origin : req.destination});
    }

    // cumulative arrival offsets along the stop sequence
    std::vector<double> arrival(tokens.size(), 0.0);
    for (std::size_t i = 1; i < ride.stops.size(); ++i) {
        const double leg_len = net.distance_m(ride.stops[i - 1].node, ride.stops[i].node);
        ride.service_distance_m += leg_len;
        arrival[i] = arrival[i - 1] + net.travel_time_s(ride.stops[i - 1].node, ride.stops[i].node);
    }
    ride.service_time_s = arrival.back();

    std::vector<double> pickup_offset(degree, 0.0), dropoff_offset(degree, 0.0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind == Stop::Kind::Pickup)
            pickup_offset[tokens[i].member] = arrival[i];
        else
            dropoff_offset[tokens[i].member] = arrival[i];
    }

    // earliest joint departure: no member is picked up before requesting
    double depart = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < degree; ++m)
        depart = std::max(depart, members[m]->request_time_s - pickup_offset[m]);

    ride.members.reserve(degree);
    ride.plans.reserve(degree);
    for (int m = 0; m < degree; ++m) {
        const TripRequest& req = *members[m];
        MemberPlan plan;
        plan.request_id = req.id;
        plan.pickup_offset_s = pickup_offset[m];
        plan.in_vehicle_s = dropoff_offset[m] - pickup_offset[m];
        plan.wait_offset_s = depart + pickup_offset[m] - req.request_time_s;
        const double u_pool = pooled_utility(req, prefs, cfg.fare_per_km, cfg.discount,
                                             plan.in_vehicle_s, plan.wait_offset_s);
        if (u_pool < solo_utility(req, prefs, cfg.fare_per_km))
            return std::nullopt;
        ride.members.push_back(req.id);
        ride.plans.push_back(plan);
    }
    return ride;
}

bool stops_less(const std::vector<Stop>& a, const std::vector<Stop>& b) {
    auto key = [](const Stop& s) {
        return std::pair<int, std::int64_t>(s.kind == Stop::Kind::Pickup ? 0 : 1, s.request_id);
    };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](const Stop& x, const Stop& y) { return key(x) < key(y); });
}

void validate_config(const ShareabilityConfig& cfg, const TravellerPrefs& prefs) {
    if (cfg.max_degree < 1)
        throw std::invalid_argument("max_degree must be >= 1");
    if (cfg.discount < 0.0 || cfg.discount >= 1.0)
        throw std::invalid_argument("discount must be in [0, 1)");
    if (cfg.fare_per_km < 0.0)
        throw std::invalid_argument("fare_per_km must be >= 0");
    if (cfg.pairing_window_s < 0.0)
        throw std::invalid_argument("pairing_window_s must be >= 0");
    if (prefs.value_of_time_eur_s < 0.0)
        throw std::invalid_argument("value_of_time must be >= 0");
    if (prefs.pooled_time_factor < 1.0)
        throw std::invalid_argument("pooled_time_factor must be >= 1");
}

} // namespace

const MemberPlan& RideCandidate::plan_of(std::int64_t request_id) const {
    for (const MemberPlan& plan : plans)
        if (plan.request_id == request_id)
            return plan;
    throw std::invalid_argument("request " + std::to_string(request_id) + " is not a ride member");
}

double traveller_utility(const TripRequest& req, const TravellerPrefs& prefs,
                         const RideCandidate& ride, double fare_per_km, double discount) {
    const MemberPlan& plan = ride.plan_of(req.id); // throws on non-member
    if (ride.kind == RideKind::Solo)
        return solo_utility(req, prefs, fare_per_km);
    return pooled_utility(req, prefs, fare_per_km, discount, plan.in_vehicle_s, plan.wait_offset_s);
}

RideCandidate make_solo_candidate(const TripRequest& req) {
    RideCandidate ride;
    ride.kind = RideKind::Solo;
    ride.members = {req.id};
    ride.stops = {{Stop::Kind::Pickup, req.id, req.origin},
                  {Stop::Kind::Dropoff, req.id, req.destination}};
    ride.plans = {{req.id, 0.0, req.direct_time_s, 0.0}};
    ride.service_distance_m = req.direct_distance_m;
    ride.service_time_s = req.direct_time_s;
    return ride;
}

std::vector<RideCandidate> attractive_pooled_rides(std::span<const TripRequest* const> members,
                                                   const Network& net,
                                                   const TravellerPrefs& prefs,
                                                   const ShareabilityConfig& cfg) {
    if (members.size() < 2)
        return {};
    double t_min = members.front()->request_time_s, t_max = t_min;
    for (const TripRequest* req : members) {
        t_min = std::min(t_min, req->request_time_s);
        t_max = std::max(t_max, req->request_time_s);
    }
    if (t_max - t_min > cfg.pairing_window_s)
        return {};

    std::vector<RideCandidate> out;
    for (const auto& tokens : orderings_for_degree(static_cast<int>(members.size()))) {
        if (auto ride = evaluate_ordering(members, tokens, net, prefs, cfg))
            out.push_back(std::move(*ride));
    }
    return out;
}

std::vector<RideCandidate> enumerate_rides(std::span<const TripRequest> batch,
                                           const Network& net,
                                           const TravellerPrefs& prefs,
                                           const ShareabilityConfig& cfg) {
    validate_config(cfg, prefs);

    std::vector<const TripRequest*> sorted;
    sorted.reserve(batch.size());
    for (const TripRequest& req : batch)
        sorted.push_back(&req);
    std::sort(sorted.begin(), sorted.end(),
              [](const TripRequest* a, const TripRequest* b) { return a->id < b->id; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i]->id == sorted[i - 1]->id)
            throw ValidationError("duplicate request id " + std::to_string(sorted[i]->id));
    }

    std::vector<RideCandidate> out;
    for (const TripRequest* req : sorted)
        out.push_back(make_solo_candidate(*req));

    // Degree-k sets grow from attractive degree-(k-1) sets extended by any
    // further request. This is exhaustive: dropping the member picked LAST
    // from an attractive ride leaves the stop-sequence prefix unchanged, so
    // every remaining member's detour and wait can only shrink and the
    // (k-1)-ride stays attractive. (Deleting an arbitrary member does not
    // have that property, so extension must come from any attractive subset.)
    std::vector<std::vector<const TripRequest*>> frontier;
    for (const TripRequest* req : sorted)
        frontier.push_back({req});

    for (int degree = 2; degree <= cfg.max_degree; ++degree) {
        std::vector<std::vector<const TripRequest*>> next_frontier;
        std::set<std::vector<std::int64_t>> visited;
        for (const auto& base : frontier) {
            for (const TripRequest* extra : sorted) {
                std::vector<const TripRequest*> members = base;
                const auto at = std::lower_bound(members.begin(), members.end(), extra,
                                                 [](const TripRequest* a, const TripRequest* b) {
                                                     return a->id < b->id;
                                                 });
                if (at != members.end() && (*at)->id == extra->id)
                    continue;
                members.insert(at, extra);
                std::vector<std::int64_t> ids(degree);
                for (int i = 0; i < degree; ++i)
                    ids[i] = members[i]->id;
                if (!visited.insert(std::move(ids)).second)
                    continue;
                auto rides = attractive_pooled_rides(members, net, prefs, cfg);
                if (rides.empty())
                    continue;
                next_frontier.push_back(std::move(members));
                for (RideCandidate& ride : rides)
                    out.push_back(std::move(ride));
            }
        }
        frontier = std::move(next_frontier);
        if (frontier.empty())
            break;
    }

    std::sort(out.begin(), out.end(), [](const RideCandidate& a, const RideCandidate& b) {
        if (a.members.size() != b.members.size())
            return a.members.size() < b.members.size();
        if (a.members != b.members)
            return a.members < b.members;
        return stops_less(a.stops, b.stops);
    });
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i].id = static_cast<std::int64_t>(i);
    return out;
}

std::vector<RideCandidate> prune_served(std::vector<RideCandidate> candidates,
                                        const std::vector<std::int64_t>& served_ids) {
    if (served_ids.empty())
        return candidates;
    std::set<std::int64_t> served(served_ids.begin(), served_ids.end());
    std::erase_if(candidates, [&](const RideCandidate& ride) {
        return std::any_of(ride.members.begin(), ride.members.end(),
                           [&](std::int64_t id) { return served.count(id) != 0; });
    });
    return candidates;
}

void write_ride_set_csv(const std::vector<RideCandidate>& candidates, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << "ride_id,kind,member_ids,service_distance_m,service_time_s\n";
    char buf[64];
    for (const RideCandidate& ride : candidates) {
        out << ride.id << ',' << (ride.kind == RideKind::Solo ? "solo" : "pooled") << ',';
        for (std::size_t i = 0; i < ride.members.size(); ++i) {
            if (i)
                out << ';';
            out << ride.members[i];
        }
        std::snprintf(buf, sizeof buf, ",%.3f,%.3f\n", ride.service_distance_m, ride.service_time_s);
        out << buf;
    }
    if (!out.flush())
        throw IoError("cannot write " + path);
}

} // namespace poolsim
