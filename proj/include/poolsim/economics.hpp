#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "poolsim/demand.hpp"
#include "poolsim/rng.hpp"
#include "poolsim/shareability.hpp"

namespace poolsim {

// Money is integer euro-cents throughout; each ride-level quantity is rounded
// half-up once, identities between them are then exact.
using Cents = std::int64_t;

Cents eur_to_cents(double eur);
double cents_to_eur(Cents c);

enum class PricingPolicy { SoloOnly, ForcedPooling, ProfitMax };

const char* policy_name(PricingPolicy p);
std::optional<PricingPolicy> parse_policy(const std::string& name);

struct PricingParams {
    double fare_per_km = 1.5;  // beta_c
    double discount = 0.25;    // lambda, pooled fare discount, [0, 1)
    double commission = 0.25;  // T_r, platform cut of the total fare, [0, 1)
    PricingPolicy policy = PricingPolicy::ProfitMax;
};

enum class ChoiceMode { Deterministic, Mnl };

struct DriverProfile {
    std::int64_t id = 0;
    double cost_per_km = 0.5;           // beta_l
    double value_of_time_eur_s = 0.0;   // beta_t
    double pooled_profit_factor = 1.0;  // beta_{r,i}: 1 for solo, (0,1] for pooled
    ChoiceMode choice_mode = ChoiceMode::Deterministic;
    double mnl_scale = 1.0;             // mu, per euro of effective profit
};

// A candidate priced for one concrete driver position. Construction enforces
// total_fare = sum(member_fares), driver_revenue = round((1-T)*F),
// profit = revenue - cost; platform commission is F - R by definition, so
// fare conservation is exact in cents.
struct PricedRide {
    RideCandidate candidate;
    std::vector<Cents> member_fares; // aligned with candidate.members
    Cents total_fare = 0;            // F_r
    Cents driver_revenue = 0;        // R_r
    Cents operating_cost = 0;        // C_r
    Cents profit = 0;                // I_r = R_r - C_r
    double pickup_distance_m = 0.0;  // driver position -> first stop
    double pickup_time_s = 0.0;
    double effective_utility_eur = 0.0; // beta_{r,i} * I_r, in euros

    Cents platform_commission() const { return total_fare - driver_revenue; }
};

// Distance-based fare for one traveller: beta_c * l_i, discounted by lambda
// when the ride is pooled. l_i is the direct shortest-path distance.
Cents fare(const TripRequest& req, RideKind kind, const PricingParams& p);

// Prices a candidate for a driver idle at driver_position: pickup leg by
// shortest path to the first stop, operating cost over pickup + service legs.
PricedRide price_ride(const RideCandidate& candidate, NodeId driver_position,
                      const PricingParams& p, const DriverProfile& d,
                      const Network& net, const RequestLookup& requests);

// solo_only keeps solo candidates, forced_pooling keeps pooled ones,
// profit_max is the identity.
std::vector<RideCandidate> filter_by_policy(std::vector<RideCandidate> candidates,
                                            PricingPolicy policy);

// Driver's pick from a nonempty priced set: argmax of effective utility
// (ties -> smallest candidate id) in deterministic mode, multinomial logit
// with scale mu in mnl mode. Returns the index of the chosen ride, or nullopt
// iff decline_allowed and every effective utility is < 0.
std::optional<std::size_t> choose_ride(std::span<const PricedRide> priced,
                                       const DriverProfile& d, bool decline_allowed,
                                       Rng& rng);

} // namespace poolsim
