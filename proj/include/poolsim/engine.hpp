#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "poolsim/demand.hpp"
#include "poolsim/economics.hpp"
#include "poolsim/network.hpp"
#include "poolsim/shareability.hpp"

namespace poolsim {

// Queue priority at equal times follows this order (stop completions first,
// then expiries, then arrivals); driver decisions are logged synchronously.
enum class EventKind {
    DropoffComplete = 0,
    PickupComplete = 1,
    PatienceExpired = 2,
    RequestArrival = 3,
    DriverDecision = 4,
};

const char* event_kind_name(EventKind k);

struct SimEvent {
    double time_s = 0.0;
    EventKind kind = EventKind::RequestArrival;
    std::int64_t driver_id = -1; // -1 when not applicable
    std::int64_t ride_id = -1;
    std::vector<std::int64_t> request_ids;
};

enum class OutcomeKind { Served, Expired };

struct RequestOutcome {
    std::int64_t request_id = -1;
    OutcomeKind outcome = OutcomeKind::Expired;
    std::int64_t ride_id = -1;  // -1 for expired
    double wait_s = 0.0;        // request -> own pickup (served only)
    double in_vehicle_s = 0.0;  // pickup -> dropoff (served only)
    Cents fare = 0;
};

struct RouteLeg {
    NodeId from = 0;
    NodeId to = 0;
    double length_m = 0.0;
    double duration_s = 0.0;
};

struct ServedRideRecord {
    std::int64_t ride_id = -1;
    std::int64_t driver_id = -1;
    RideKind kind = RideKind::Solo;
    std::vector<std::int64_t> members;
    std::vector<Stop> stops;
    RouteLeg pickup_leg;                // driver position -> first stop
    std::vector<RouteLeg> service_legs; // consecutive stops
    double decision_time_s = 0.0;
    double driving_time_s = 0.0;        // pickup leg + service legs
    Cents total_fare = 0;
    Cents driver_revenue = 0;
    Cents operating_cost = 0;
    Cents profit = 0;
};

struct DriverLedger {
    std::int64_t driver_id = 0;
    NodeId initial_position = 0;
    double pooled_profit_factor = 1.0;
    std::int64_t n_rides = 0;
    std::int64_t n_pooled = 0;
    Cents revenue = 0;
    Cents cost = 0;
    Cents profit = 0;
    double busy_s = 0.0;
    double idle_s = 0.0;
};

struct EventLog {
    std::vector<SimEvent> events;          // processing order
    std::vector<RequestOutcome> outcomes;  // sorted by request id
    std::vector<DriverLedger> drivers;     // sorted by driver id
    std::vector<ServedRideRecord> rides;   // serve order == ride id
    double horizon_s = 0.0;
    double end_time_s = 0.0; // max(horizon, last event) incl. drain
    std::int64_t n_requests = 0;
};

struct GridNetworkSpec {
    int rows = 6;
    int cols = 6;
    double edge_len_m = 500.0;
};

struct FileNetworkSpec {
    std::string nodes_file;
    std::string edges_file;
};

struct NetworkSpec {
    std::variant<GridNetworkSpec, FileNetworkSpec> source = GridNetworkSpec{};
    double speed_kmh = 36.0;
};

struct PoissonDemandSpec {
    double rate_per_hour = 400.0;
};

struct FileDemandSpec {
    std::string file;
};

struct DemandSpec {
    std::variant<PoissonDemandSpec, FileDemandSpec> source = PoissonDemandSpec{};
    double patience_s = 300.0; // generated demand only; files carry their own
};

struct DriverSpec {
    int count = 20;
    double cost_per_km = 0.5;
    double value_of_time_eur_s = 0.0;
    double pooled_profit_factor_min = 1.0;
    double pooled_profit_factor_max = 1.0;
    ChoiceMode choice_mode = ChoiceMode::Deterministic;
    double mnl_scale = 1.0;
    bool decline_allowed = false;
    std::vector<NodeId> initial_positions; // optional; seeded uniform when empty
};

struct SharingSpec {
    int max_degree = 3;
    double pairing_window_s = 600.0;
    TravellerPrefs prefs;
};

struct ScenarioConfig {
    NetworkSpec network;
    DemandSpec demand;
    DriverSpec drivers;
    PricingParams pricing;
    SharingSpec sharing;
    double sim_horizon_s = 14400.0; // 4 h
    std::uint64_t seed = 0;
};

// What a driver was offered at one decision; test hook for cross-checking
// choice-set construction against enumerate_rides.
struct DecisionTrace {
    double time_s = 0.0;
    std::int64_t driver_id = -1;
    std::int64_t trigger_request = -1;
    std::vector<std::int64_t> waiting_pool;      // sorted request ids
    std::vector<RideCandidate> offered;          // policy-filtered, patience-feasible
    std::optional<std::size_t> chosen;           // index into offered
};

using DecisionTraceSink = std::function<void(const DecisionTrace&)>;

// Runs one scenario end to end: builds network, demand and drivers from the
// config (all seeded), then replays the event loop until every request has a
// terminal outcome and all in-flight rides have drained. Deterministic given
// the config, including the seed.
EventLog run(const ScenarioConfig& cfg, const DecisionTraceSink& trace = nullptr);

// Same loop over externally built inputs; cfg's network/demand specs are
// ignored. Request times must lie in [0, sim_horizon_s).
EventLog run(const Network& net, const std::vector<TripRequest>& requests,
             const ScenarioConfig& cfg, const DecisionTraceSink& trace = nullptr);

double speed_mps_from_kmh(double kmh);

} // namespace poolsim
