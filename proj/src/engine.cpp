#include "poolsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace poolsim {

const char* event_kind_name(EventKind k) {
    switch (k) {
    case EventKind::RequestArrival: return "request_arrival";
    case EventKind::DriverDecision: return "driver_decision";
    case EventKind::PickupComplete: return "pickup_complete";
    case EventKind::DropoffComplete: return "dropoff_complete";
    case EventKind::PatienceExpired: return "patience_expired";
    }
    return "?";
}

double speed_mps_from_kmh(double kmh) {
    return kmh / 3.6;
}

namespace {

enum class ReqState { Pending, Waiting, Assigned, PickedUp, Served, Expired };
enum class DrvStatus { Idle, ToPickup, Serving };

struct QueuedEvent {
    double time = 0.0;
    EventKind kind = EventKind::RequestArrival;
    std::uint64_t seq = 0;
    std::int64_t request_id = -1; // arrival / expiry
    std::int64_t ride_id = -1;    // stop completions
    std::size_t stop_index = 0;
};

int kind_priority(EventKind k) {
    switch (k) {
    case EventKind::DropoffComplete:
    case EventKind::PickupComplete:
        return 0; // stop completions keep their scheduling order
    case EventKind::PatienceExpired:
        return 1;
    case EventKind::RequestArrival:
        return 2;
    default:
        return 3;
    }
}

struct LaterEvent {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        if (a.time != b.time)
            return a.time > b.time;
        const int pa = kind_priority(a.kind), pb = kind_priority(b.kind);
        if (pa != pb)
            return pa > pb;
        return a.seq > b.seq;
    }
};

struct ReqRt {
    const TripRequest* req = nullptr;
    ReqState state = ReqState::Pending;
    double deadline = 0.0;
    double pickup_time = -1.0;
    std::int64_t ride_id = -1;
    Cents fare = 0;
};

struct DrvRt {
    DriverProfile profile;
    NodeId position = 0;
    DrvStatus status = DrvStatus::Idle;
};

struct ActiveRide {
    std::int64_t driver_id = -1;
    RideCandidate candidate;
    std::vector<Cents> member_fares;
    Cents total_fare = 0, revenue = 0, cost = 0, profit = 0;
    double driving_time_s = 0.0;
    std::size_t stops_done = 0;
};

// Attractive pooled rides per exact member set, memoized; attractiveness does
// not depend on the simulation clock, so entries never go stale.
class RideIndex {
public:
    RideIndex(const Network& net, const TravellerPrefs& prefs, const ShareabilityConfig& cfg,
              const RequestLookup& requests)
        : net_(net), prefs_(prefs), cfg_(cfg), requests_(requests) {}

    const std::vector<RideCandidate>& pooled(const std::vector<std::int64_t>& member_ids) {
        auto it = cache_.find(member_ids);
        if (it != cache_.end())
            return it->second;
        std::vector<const TripRequest*> members;
        members.reserve(member_ids.size());
        for (std::int64_t id : member_ids)
            members.push_back(&requests_.at(id));
        auto rides = attractive_pooled_rides(members, net_, prefs_, cfg_);
        return cache_.emplace(member_ids, std::move(rides)).first->second;
    }

    bool attractive(const std::vector<std::int64_t>& member_ids) {
        return !pooled(member_ids).empty();
    }

private:
    const Network& net_;
    const TravellerPrefs& prefs_;
    const ShareabilityConfig& cfg_;
    const RequestLookup& requests_;
    std::map<std::vector<std::int64_t>, std::vector<RideCandidate>> cache_;
};

bool stops_less(const std::vector<Stop>& a, const std::vector<Stop>& b) {
    auto key = [](const Stop& s) {
        return std::pair<int, std::int64_t>(s.kind == Stop::Kind::Pickup ? 0 : 1, s.request_id);
    };
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](const Stop& x, const Stop& y) { return key(x) < key(y); });
}

class Simulation {
public:
    Simulation(const Network& net, const std::vector<TripRequest>& requests,
               const ScenarioConfig& cfg, const DecisionTraceSink& trace)
        : net_(net), requests_(requests), cfg_(cfg), lookup_(requests),
          share_{cfg.sharing.max_degree, cfg.pricing.discount, cfg.pricing.fare_per_km,
                 cfg.sharing.pairing_window_s},
          index_(net, cfg.sharing.prefs, share_, lookup_), choice_rng_(cfg.seed, 3),
          trace_(trace) {}

    EventLog run() {
        validate();
        init_drivers();
        init_requests();

        while (!queue_.empty()) {
            const double now = queue_.top().time;
            while (!queue_.empty() && queue_.top().time == now) {
                const QueuedEvent ev = queue_.top();
                queue_.pop();
                handle(ev);
            }
            attempt_matching(now);
        }

        log_.horizon_s = cfg_.sim_horizon_s;
        // stale expiry events for already-served requests do not extend the run
        log_.end_time_s = std::max(cfg_.sim_horizon_s, last_activity_);
        log_.n_requests = static_cast<std::int64_t>(requests_.size());
        finalize_outcomes();
        finalize_ledgers();
        return std::move(log_);
    }

private:
    void validate() const {
        if (cfg_.sim_horizon_s <= 0.0)
            throw ValidationError("sim horizon must be > 0");
        if (cfg_.drivers.count < 1)
            throw ValidationError("driver count must be >= 1");
        if (!cfg_.drivers.initial_positions.empty() &&
            cfg_.drivers.initial_positions.size() != static_cast<std::size_t>(cfg_.drivers.count))
            throw ValidationError("initial_positions must match driver count");
        for (NodeId node : cfg_.drivers.initial_positions)
            if (!net_.has_node(node))
                throw ValidationError("driver initial position references unknown node " +
                                      std::to_string(node));
        if (cfg_.drivers.cost_per_km < 0.0 || cfg_.drivers.value_of_time_eur_s < 0.0)
            throw ValidationError("driver cost parameters must be >= 0");
        if (cfg_.drivers.pooled_profit_factor_min <= 0.0 ||
            cfg_.drivers.pooled_profit_factor_max > 1.0 ||
            cfg_.drivers.pooled_profit_factor_min > cfg_.drivers.pooled_profit_factor_max)
            throw ValidationError("pooled_profit_factor range must satisfy 0 < min <= max <= 1");
        if (cfg_.drivers.choice_mode == ChoiceMode::Mnl && cfg_.drivers.mnl_scale <= 0.0)
            throw ValidationError("mnl_scale must be > 0");
        if (cfg_.pricing.fare_per_km <= 0.0)
            throw ValidationError("fare_per_km must be > 0");
        if (cfg_.pricing.discount < 0.0 || cfg_.pricing.discount >= 1.0)
            throw ValidationError("discount must be in [0, 1)");
        if (cfg_.pricing.commission < 0.0 || cfg_.pricing.commission >= 1.0)
            throw ValidationError("commission must be in [0, 1)");
        if (cfg_.sharing.max_degree < 1)
            throw ValidationError("max_degree must be >= 1");
        if (cfg_.sharing.pairing_window_s < 0.0)
            throw ValidationError("pairing_window_s must be >= 0");
        if (cfg_.sharing.prefs.value_of_time_eur_s < 0.0)
            throw ValidationError("traveller value_of_time must be >= 0");
        if (cfg_.sharing.prefs.pooled_time_factor < 1.0)
            throw ValidationError("pooled_time_factor must be >= 1");

        std::set<std::int64_t> ids;
        for (const TripRequest& req : requests_) {
            if (!ids.insert(req.id).second)
                throw ValidationError("duplicate request id " + std::to_string(req.id));
            if (!net_.has_node(req.origin) || !net_.has_node(req.destination))
                throw ValidationError("request " + std::to_string(req.id) +
                                      " references unknown node");
            if (req.origin == req.destination)
                throw ValidationError("request " + std::to_string(req.id) +
                                      ": origin equals destination");
            if (req.request_time_s < 0.0 || req.request_time_s >= cfg_.sim_horizon_s)
                throw ValidationError("request " + std::to_string(req.id) +
                                      ": request_time outside [0, horizon)");
            if (req.patience_s <= 0.0)
                throw ValidationError("request " + std::to_string(req.id) + ": patience must be > 0");
            if (req.direct_distance_m != net_.distance_m(req.origin, req.destination))
                throw ValidationError("request " + std::to_string(req.id) +
                                      ": cached direct distance does not match routing");
        }
    }

    void init_drivers() {
        Rng rng(cfg_.seed, 2);
        const auto& nodes = net_.nodes();
        drivers_.resize(cfg_.drivers.count);
        log_.drivers.resize(cfg_.drivers.count);
        for (int i = 0; i < cfg_.drivers.count; ++i) {
            DrvRt& drv = drivers_[i];
            const NodeId pos = cfg_.drivers.initial_positions.empty()
                                   ? nodes[rng.uniform_below(nodes.size())].id
                                   : cfg_.drivers.initial_positions[i];
            const double factor =
                cfg_.drivers.pooled_profit_factor_min +
                (cfg_.drivers.pooled_profit_factor_max - cfg_.drivers.pooled_profit_factor_min) *
                    rng.uniform01();
            drv.position = pos;
            drv.profile.id = i;
            drv.profile.cost_per_km = cfg_.drivers.cost_per_km;
            drv.profile.value_of_time_eur_s = cfg_.drivers.value_of_time_eur_s;
            drv.profile.pooled_profit_factor = factor;
            drv.profile.choice_mode = cfg_.drivers.choice_mode;
            drv.profile.mnl_scale = cfg_.drivers.mnl_scale;

            DriverLedger& ledger = log_.drivers[i];
            ledger.driver_id = i;
            ledger.initial_position = pos;
            ledger.pooled_profit_factor = factor;
        }
    }

    void init_requests() {
        for (std::size_t i = 0; i < requests_.size(); ++i) {
            const TripRequest& req = requests_[i];
            req_index_[req.id] = i;
            ReqRt rt;
            rt.req = &req;
            rt.deadline = req.request_time_s + req.patience_s;
            req_rt_.push_back(rt);
            push_event({req.request_time_s, EventKind::RequestArrival, seq_++, req.id});
        }
    }

    void push_event(QueuedEvent ev) { queue_.push(ev); }

    ReqRt& rt_of(std::int64_t request_id) { return req_rt_[req_index_.at(request_id)]; }

    void log_event(double time, EventKind kind, std::int64_t driver_id, std::int64_t ride_id,
                   std::vector<std::int64_t> request_ids) {
        log_.events.push_back({time, kind, driver_id, ride_id, std::move(request_ids)});
    }

    void handle(const QueuedEvent& ev) {
        switch (ev.kind) {
        case EventKind::RequestArrival: {
            ReqRt& rt = rt_of(ev.request_id);
            assert(rt.state == ReqState::Pending);
            rt.state = ReqState::Waiting;
            push_event({rt.deadline, EventKind::PatienceExpired, seq_++, ev.request_id});
            log_event(ev.time, EventKind::RequestArrival, -1, -1, {ev.request_id});
            last_activity_ = std::max(last_activity_, ev.time);
            break;
        }
        case EventKind::PatienceExpired: {
            ReqRt& rt = rt_of(ev.request_id);
            if (rt.state != ReqState::Waiting)
                break; // picked up (or assigned with pickup due) before the deadline
            rt.state = ReqState::Expired;
            log_event(ev.time, EventKind::PatienceExpired, -1, -1, {ev.request_id});
            last_activity_ = std::max(last_activity_, ev.time);
            break;
        }
        case EventKind::PickupComplete:
        case EventKind::DropoffComplete:
            handle_stop(ev);
            last_activity_ = std::max(last_activity_, ev.time);
            break;
        default:
            assert(false);
        }
    }

    void handle_stop(const QueuedEvent& ev) {
        ActiveRide& ride = active_.at(ev.ride_id);
        const Stop& stop = ride.candidate.stops[ev.stop_index];
        DrvRt& drv = drivers_[ride.driver_id];
        ReqRt& rt = rt_of(stop.request_id);
        drv.position = stop.node;
        ++ride.stops_done;

        if (stop.kind == Stop::Kind::Pickup) {
            assert(rt.state == ReqState::Assigned);
            rt.state = ReqState::PickedUp;
            rt.pickup_time = ev.time;
            drv.status = DrvStatus::Serving;
            log_event(ev.time, EventKind::PickupComplete, ride.driver_id, ev.ride_id,
                      {stop.request_id});
        } else {
            assert(rt.state == ReqState::PickedUp);
            rt.state = ReqState::Served;
            RequestOutcome outcome;
            outcome.request_id = stop.request_id;
            outcome.outcome = OutcomeKind::Served;
            outcome.ride_id = ev.ride_id;
            outcome.wait_s = rt.pickup_time - rt.req->request_time_s;
            outcome.in_vehicle_s = ev.time - rt.pickup_time;
            outcome.fare = rt.fare;
            outcomes_.push_back(outcome);
            log_event(ev.time, EventKind::DropoffComplete, ride.driver_id, ev.ride_id,
                      {stop.request_id});
        }

        if (ride.stops_done == ride.candidate.stops.size()) {
            DriverLedger& ledger = log_.drivers[ride.driver_id];
            ledger.revenue += ride.revenue;
            ledger.cost += ride.cost;
            ledger.profit += ride.profit;
            ledger.busy_s += ride.driving_time_s;
            ++ledger.n_rides;
            if (ride.candidate.kind == RideKind::Pooled)
                ++ledger.n_pooled;
            drv.status = DrvStatus::Idle;
            active_.erase(ev.ride_id);
        }
    }

    std::vector<std::int64_t> waiting_by_request_time() const {
        std::vector<std::int64_t> out;
        for (const ReqRt& rt : req_rt_)
            if (rt.state == ReqState::Waiting)
                out.push_back(rt.req->id);
        std::sort(out.begin(), out.end(), [this](std::int64_t a, std::int64_t b) {
            const TripRequest& ra = *req_rt_[req_index_.at(a)].req;
            const TripRequest& rb = *req_rt_[req_index_.at(b)].req;
            if (ra.request_time_s != rb.request_time_s)
                return ra.request_time_s < rb.request_time_s;
            return a < b;
        });
        return out;
    }

    int nearest_idle_driver(NodeId origin) const {
        int best = -1;
        double best_dist = 0.0;
        for (std::size_t i = 0; i < drivers_.size(); ++i) {
            if (drivers_[i].status != DrvStatus::Idle)
                continue;
            const double dist = net_.distance_m(drivers_[i].position, origin);
            if (best < 0 || dist < best_dist) {
                best = static_cast<int>(i);
                best_dist = dist;
            }
        }
        return best;
    }

    // Attractive pooled member sets over the given waiting pool, grown degree
    // by degree exactly like enumerate_rides (extension from any attractive
    // subset, each set evaluated once via the memoized index).
    std::vector<std::vector<std::int64_t>> attractive_sets_over(
        const std::vector<std::int64_t>& pool) {
        std::vector<std::vector<std::int64_t>> all;
        if (cfg_.pricing.policy == PricingPolicy::SoloOnly || share_.max_degree < 2)
            return all;

        auto time_of = [this](std::int64_t id) { return rt_of(id).req->request_time_s; };
        std::vector<std::vector<std::int64_t>> frontier;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            for (std::size_t j = i + 1; j < pool.size(); ++j) {
                if (std::abs(time_of(pool[i]) - time_of(pool[j])) > share_.pairing_window_s)
                    continue;
                std::vector<std::int64_t> pair{pool[i], pool[j]};
                if (index_.attractive(pair))
                    frontier.push_back(std::move(pair));
            }
        }
        all = frontier;

        for (int degree = 3; degree <= share_.max_degree && !frontier.empty(); ++degree) {
            std::vector<std::vector<std::int64_t>> next_frontier;
            std::set<std::vector<std::int64_t>> visited;
            for (const auto& base : frontier) {
                for (std::int64_t p : pool) {
                    if (std::binary_search(base.begin(), base.end(), p))
                        continue;
                    bool in_window = true;
                    for (std::int64_t m : base)
                        in_window = in_window && std::abs(time_of(m) - time_of(p)) <=
                                                     share_.pairing_window_s;
                    if (!in_window)
                        continue;
                    std::vector<std::int64_t> members = base;
                    members.insert(std::upper_bound(members.begin(), members.end(), p), p);
                    if (!visited.insert(members).second)
                        continue;
                    if (!index_.attractive(members))
                        continue;
                    next_frontier.push_back(members);
                    all.push_back(std::move(members));
                }
            }
            frontier = std::move(next_frontier);
        }
        return all;
    }

    // Policy-filtered attractive rides containing the trigger whose members
    // are all still waiting.
    std::vector<RideCandidate> gather_candidates(
        std::int64_t trigger, const std::vector<std::vector<std::int64_t>>& pool_sets) {
        std::vector<RideCandidate> out;
        const TripRequest& trig = *rt_of(trigger).req;
        if (cfg_.pricing.policy != PricingPolicy::ForcedPooling)
            out.push_back(make_solo_candidate(trig));

        for (const auto& members : pool_sets) {
            if (!std::binary_search(members.begin(), members.end(), trigger))
                continue;
            const bool all_waiting =
                std::all_of(members.begin(), members.end(), [this](std::int64_t id) {
                    return rt_of(id).state == ReqState::Waiting;
                });
            if (!all_waiting)
                continue;
            const auto& rides = index_.pooled(members);
            out.insert(out.end(), rides.begin(), rides.end());
        }

        out = filter_by_policy(std::move(out), cfg_.pricing.policy);
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

    bool pickup_beats_patience(const RideCandidate& cand, double now, double pickup_leg_s) const {
        for (const MemberPlan& plan : cand.plans) {
            const ReqRt& rt = req_rt_[req_index_.at(plan.request_id)];
            if (now + pickup_leg_s + plan.pickup_offset_s > rt.deadline)
                return false;
        }
        return true;
    }

    bool any_idle_driver() const {
        return std::any_of(drivers_.begin(), drivers_.end(),
                           [](const DrvRt& d) { return d.status == DrvStatus::Idle; });
    }

    void attempt_matching(double now) {
        while (true) {
            if (!any_idle_driver())
                return;
            bool progress = false;
            const std::vector<std::int64_t> waiting = waiting_by_request_time();
            std::vector<std::int64_t> pool = waiting;
            std::sort(pool.begin(), pool.end());
            const auto pool_sets = attractive_sets_over(pool);
            for (std::int64_t trigger : waiting) {
                ReqRt& rt = rt_of(trigger);
                if (rt.state != ReqState::Waiting)
                    continue;
                const int driver_id = nearest_idle_driver(rt.req->origin);
                if (driver_id < 0)
                    return; // nobody idle; nothing can change until the next event
                DrvRt& drv = drivers_[driver_id];

                std::vector<RideCandidate> candidates = gather_candidates(trigger, pool_sets);
                std::vector<PricedRide> priced;
                priced.reserve(candidates.size());
                for (RideCandidate& cand : candidates) {
                    const double leg_s = net_.travel_time_s(drv.position, cand.stops.front().node);
                    if (!pickup_beats_patience(cand, now, leg_s))
                        continue;
                    priced.push_back(price_ride(cand, drv.position, cfg_.pricing, drv.profile,
                                                net_, lookup_));
                }
                if (priced.empty())
                    continue;

                const auto chosen = choose_ride(priced, drv.profile,
                                                cfg_.drivers.decline_allowed, choice_rng_);
                if (trace_) {
                    DecisionTrace tr;
                    tr.time_s = now;
                    tr.driver_id = driver_id;
                    tr.trigger_request = trigger;
                    for (const ReqRt& r : req_rt_)
                        if (r.state == ReqState::Waiting)
                            tr.waiting_pool.push_back(r.req->id);
                    std::sort(tr.waiting_pool.begin(), tr.waiting_pool.end());
                    for (const PricedRide& pr : priced)
                        tr.offered.push_back(pr.candidate);
                    tr.chosen = chosen;
                    trace_(tr);
                }
                if (!chosen)
                    continue; // driver declined; the request keeps waiting
                commit(driver_id, priced[*chosen], now);
                progress = true;
            }
            if (!progress)
                return;
        }
    }

    void commit(int driver_id, const PricedRide& priced, double now) {
        DrvRt& drv = drivers_[driver_id];
        assert(drv.status == DrvStatus::Idle);
        const RideCandidate& cand = priced.candidate;
        const std::int64_t ride_id = static_cast<std::int64_t>(log_.rides.size());

        log_event(now, EventKind::DriverDecision, driver_id, ride_id, cand.members);

        for (std::size_t i = 0; i < cand.members.size(); ++i) {
            ReqRt& rt = rt_of(cand.members[i]);
            assert(rt.state == ReqState::Waiting); // choice sets contain only waiting members
            rt.state = ReqState::Assigned;
            rt.ride_id = ride_id;
            rt.fare = priced.member_fares[i];
        }
        drv.status = DrvStatus::ToPickup;

        // absolute stop times, same leg arithmetic as the enumeration
        std::vector<double> stop_times(cand.stops.size());
        stop_times[0] = now + priced.pickup_time_s;
        for (std::size_t i = 1; i < cand.stops.size(); ++i)
            stop_times[i] = stop_times[i - 1] +
                            net_.travel_time_s(cand.stops[i - 1].node, cand.stops[i].node);
        for (std::size_t i = 0; i < cand.stops.size(); ++i) {
            const EventKind kind = cand.stops[i].kind == Stop::Kind::Pickup
                                       ? EventKind::PickupComplete
                                       : EventKind::DropoffComplete;
            push_event({stop_times[i], kind, seq_++, -1, ride_id, i});
        }

        ServedRideRecord record;
        record.ride_id = ride_id;
        record.driver_id = driver_id;
        record.kind = cand.kind;
        record.members = cand.members;
        record.stops = cand.stops;
        record.pickup_leg = {drv.position, cand.stops.front().node, priced.pickup_distance_m,
                             priced.pickup_time_s};
        for (std::size_t i = 1; i < cand.stops.size(); ++i) {
            record.service_legs.push_back(
                {cand.stops[i - 1].node, cand.stops[i].node,
                 net_.distance_m(cand.stops[i - 1].node, cand.stops[i].node),
                 net_.travel_time_s(cand.stops[i - 1].node, cand.stops[i].node)});
        }
        record.decision_time_s = now;
        record.driving_time_s = priced.pickup_time_s + cand.service_time_s;
        record.total_fare = priced.total_fare;
        record.driver_revenue = priced.driver_revenue;
        record.operating_cost = priced.operating_cost;
        record.profit = priced.profit;
        log_.rides.push_back(std::move(record));

        ActiveRide active;
        active.driver_id = driver_id;
        active.candidate = cand;
        active.member_fares = priced.member_fares;
        active.total_fare = priced.total_fare;
        active.revenue = priced.driver_revenue;
        active.cost = priced.operating_cost;
        active.profit = priced.profit;
        active.driving_time_s = record.driving_time_s;
        active_.emplace(ride_id, std::move(active));
    }

    void finalize_outcomes() {
        for (const ReqRt& rt : req_rt_) {
            assert(rt.state == ReqState::Served || rt.state == ReqState::Expired);
            if (rt.state == ReqState::Expired) {
                RequestOutcome outcome;
                outcome.request_id = rt.req->id;
                outcome.outcome = OutcomeKind::Expired;
                outcomes_.push_back(outcome);
            }
        }
        std::sort(outcomes_.begin(), outcomes_.end(),
                  [](const RequestOutcome& a, const RequestOutcome& b) {
                      return a.request_id < b.request_id;
                  });
        log_.outcomes = std::move(outcomes_);
    }

    void finalize_ledgers() {
        for (DriverLedger& ledger : log_.drivers)
            ledger.idle_s = log_.end_time_s - ledger.busy_s;
    }

    const Network& net_;
    const std::vector<TripRequest>& requests_;
    const ScenarioConfig& cfg_;
    RequestLookup lookup_;
    ShareabilityConfig share_;
    RideIndex index_;
    Rng choice_rng_;
    DecisionTraceSink trace_;

    std::vector<ReqRt> req_rt_;
    std::unordered_map<std::int64_t, std::size_t> req_index_;
    std::vector<DrvRt> drivers_;
    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, LaterEvent> queue_;
    std::uint64_t seq_ = 0;
    double last_activity_ = 0.0;
    std::map<std::int64_t, ActiveRide> active_;
    std::vector<RequestOutcome> outcomes_;
    EventLog log_;
};

} // namespace

EventLog run(const Network& net, const std::vector<TripRequest>& requests,
             const ScenarioConfig& cfg, const DecisionTraceSink& trace) {
    Simulation sim(net, requests, cfg, trace);
    return sim.run();
}

EventLog run(const ScenarioConfig& cfg, const DecisionTraceSink& trace) {
    const double speed = speed_mps_from_kmh(cfg.network.speed_kmh);
    Network net = std::holds_alternative<GridNetworkSpec>(cfg.network.source)
                      ? [&] {
                            const auto& grid = std::get<GridNetworkSpec>(cfg.network.source);
                            return make_grid(grid.rows, grid.cols, grid.edge_len_m, speed);
                        }()
                      : [&] {
                            const auto& file = std::get<FileNetworkSpec>(cfg.network.source);
                            return load_network(file.nodes_file, file.edges_file, speed);
                        }();

    std::vector<TripRequest> requests;
    if (std::holds_alternative<PoissonDemandSpec>(cfg.demand.source)) {
        DemandConfig dc;
        dc.rate_per_hour = std::get<PoissonDemandSpec>(cfg.demand.source).rate_per_hour;
        dc.horizon_s = cfg.sim_horizon_s;
        dc.patience_s = cfg.demand.patience_s;
        dc.seed = cfg.seed;
        requests = generate_demand(net, dc);
    } else {
        requests = load_demand(net, std::get<FileDemandSpec>(cfg.demand.source).file);
    }

    return run(net, requests, cfg, trace);
}

} // namespace poolsim
