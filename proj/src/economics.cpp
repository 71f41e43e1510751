#include "poolsim/economics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poolsim {

Cents eur_to_cents(double eur) {
    // half-up; every quantity rounded here is non-negative
    return std::llround(eur * 100.0);
}

double cents_to_eur(Cents c) {
    return static_cast<double>(c) / 100.0;
}

const char* policy_name(PricingPolicy p) {
    switch (p) {
    case PricingPolicy::SoloOnly: return "solo_only";
    case PricingPolicy::ForcedPooling: return "forced_pooling";
    case PricingPolicy::ProfitMax: return "profit_max";
    }
    return "?";
}

std::optional<PricingPolicy> parse_policy(const std::string& name) {
    if (name == "solo_only")
        return PricingPolicy::SoloOnly;
    if (name == "forced_pooling")
        return PricingPolicy::ForcedPooling;
    if (name == "profit_max")
        return PricingPolicy::ProfitMax;
    return std::nullopt;
}

Cents fare(const TripRequest& req, RideKind kind, const PricingParams& p) {
    const double factor = kind == RideKind::Pooled ? 1.0 - p.discount : 1.0;
    const double eur = p.fare_per_km * factor * (req.direct_distance_m / 1000.0);
    return eur_to_cents(eur);
}

PricedRide price_ride(const RideCandidate& candidate, NodeId driver_position,
                      const PricingParams& p, const DriverProfile& d,
                      const Network& net, const RequestLookup& requests) {
    PricedRide ride;
    ride.candidate = candidate;
    ride.pickup_distance_m = net.distance_m(driver_position, candidate.stops.front().node);
    ride.pickup_time_s = net.travel_time_s(driver_position, candidate.stops.front().node);

    ride.member_fares.reserve(candidate.members.size());
    for (std::int64_t member : candidate.members) {
        const Cents f = fare(requests.at(member), candidate.kind, p);
        ride.member_fares.push_back(f);
        ride.total_fare += f; // Eq. identity F_r = sum f_{i,r}, exact in cents
    }
    ride.driver_revenue = eur_to_cents((1.0 - p.commission) * cents_to_eur(ride.total_fare));

    const double cost_eur =
        d.cost_per_km * ((ride.pickup_distance_m + candidate.service_distance_m) / 1000.0) +
        d.value_of_time_eur_s * (ride.pickup_time_s + candidate.service_time_s);
    ride.operating_cost = eur_to_cents(cost_eur);
    ride.profit = ride.driver_revenue - ride.operating_cost;

    const double factor = candidate.kind == RideKind::Pooled ? d.pooled_profit_factor : 1.0;
    ride.effective_utility_eur = factor * cents_to_eur(ride.profit);
    return ride;
}

std::vector<RideCandidate> filter_by_policy(std::vector<RideCandidate> candidates,
                                            PricingPolicy policy) {
    switch (policy) {
    case PricingPolicy::ProfitMax:
        return candidates;
    case PricingPolicy::SoloOnly:
        std::erase_if(candidates, [](const RideCandidate& r) { return r.kind != RideKind::Solo; });
        return candidates;
    case PricingPolicy::ForcedPooling:
        std::erase_if(candidates, [](const RideCandidate& r) { return r.kind != RideKind::Pooled; });
        return candidates;
    }
    return candidates;
}

std::optional<std::size_t> choose_ride(std::span<const PricedRide> priced,
                                       const DriverProfile& d, bool decline_allowed,
                                       Rng& rng) {
    if (priced.empty())
        throw std::invalid_argument("choose_ride: empty choice set");

    if (decline_allowed) {
        const bool all_negative = std::all_of(priced.begin(), priced.end(), [](const PricedRide& r) {
            return r.effective_utility_eur < 0.0;
        });
        if (all_negative)
            return std::nullopt;
    }

    if (d.choice_mode == ChoiceMode::Deterministic) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < priced.size(); ++i) {
            const double u = priced[i].effective_utility_eur;
            const double ub = priced[best].effective_utility_eur;
            if (u > ub || (u == ub && priced[i].candidate.id < priced[best].candidate.id))
                best = i;
        }
        return best;
    }

    // multinomial logit, shifted by the max utility for numeric range
    double u_max = priced.front().effective_utility_eur;
    for (const PricedRide& r : priced)
        u_max = std::max(u_max, r.effective_utility_eur);
    std::vector<double> weights(priced.size());
    double total = 0.0;
    for (std::size_t i = 0; i < priced.size(); ++i) {
        weights[i] = std::exp(d.mnl_scale * (priced[i].effective_utility_eur - u_max));
        total += weights[i];
    }
    const double draw = rng.uniform01() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < priced.size(); ++i) {
        cum += weights[i];
        if (draw < cum)
            return i;
    }
    return priced.size() - 1;
}

} // namespace poolsim
