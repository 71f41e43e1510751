#include "poolsim/demand.hpp"

#include <algorithm>
#include <stdexcept>

#include "csv_util.hpp"
#include "poolsim/rng.hpp"

namespace poolsim {

std::vector<TripRequest> generate_demand(const Network& net, const DemandConfig& cfg) {
    if (cfg.rate_per_hour <= 0.0)
        throw std::invalid_argument("demand rate must be > 0");
    if (cfg.horizon_s < 0.0)
        throw std::invalid_argument("demand horizon must be >= 0");
    if (cfg.patience_s <= 0.0)
        throw std::invalid_argument("patience must be > 0");

    Rng rng(cfg.seed, /*stream=*/1);
    const double mean_gap_s = 3600.0 / cfg.rate_per_hour;
    const std::uint64_t n_nodes = net.nodes().size();

    std::vector<TripRequest> requests;
    double t = 0.0;
    while (true) {
        t += rng.exponential(mean_gap_s);
        if (t >= cfg.horizon_s)
            break;
        const std::uint64_t oi = rng.uniform_below(n_nodes);
        std::uint64_t di = rng.uniform_below(n_nodes - 1);
        if (di >= oi)
            ++di; // uniform over ordered distinct pairs
        TripRequest req;
        req.id = static_cast<std::int64_t>(requests.size());
        req.origin = net.nodes()[oi].id;
        req.destination = net.nodes()[di].id;
        req.request_time_s = t;
        req.patience_s = cfg.patience_s;
        req.direct_distance_m = net.distance_m(req.origin, req.destination);
        req.direct_time_s = net.travel_time_s(req.origin, req.destination);
        requests.push_back(req);
    }
    return requests;
}

std::vector<TripRequest> load_demand(const Network& net, const std::string& path) {
    std::vector<TripRequest> requests;
    std::unordered_map<std::int64_t, int> seen;
    csvutil::read_csv(path, "request_id,origin_id,destination_id,request_time_s,patience_s",
                      [&](const std::vector<std::string>& f, int line_no) {
        if (f.size() != 5)
            throw ParseError(path + " line " + std::to_string(line_no) + ": expected 5 fields, got " +
                             std::to_string(f.size()));
        TripRequest req;
        req.id = csvutil::parse_int_field(f[0], path, line_no);
        req.origin = csvutil::parse_int_field(f[1], path, line_no);
        req.destination = csvutil::parse_int_field(f[2], path, line_no);
        req.request_time_s = csvutil::parse_double_field(f[3], path, line_no);
        req.patience_s = csvutil::parse_double_field(f[4], path, line_no);

        const std::string where = path + " line " + std::to_string(line_no) + ": ";
        if (!seen.emplace(req.id, line_no).second)
            throw ValidationError(where + "duplicate request id " + std::to_string(req.id));
        for (NodeId node : {req.origin, req.destination}) {
            if (!net.has_node(node))
                throw ValidationError(where + "unknown node " + std::to_string(node));
        }
        if (req.origin == req.destination)
            throw ValidationError(where + "origin equals destination");
        if (req.request_time_s < 0.0)
            throw ValidationError(where + "request_time_s must be >= 0");
        if (req.patience_s <= 0.0)
            throw ValidationError(where + "patience_s must be > 0");

        req.direct_distance_m = net.distance_m(req.origin, req.destination);
        req.direct_time_s = net.travel_time_s(req.origin, req.destination);
        requests.push_back(req);
    });

    std::stable_sort(requests.begin(), requests.end(),
                     [](const TripRequest& a, const TripRequest& b) {
                         return a.request_time_s < b.request_time_s;
                     });
    return requests;
}

RequestLookup::RequestLookup(const std::vector<TripRequest>& requests) {
    by_id_.reserve(requests.size());
    for (const TripRequest& req : requests)
        by_id_.emplace(req.id, &req);
}

const TripRequest& RequestLookup::at(std::int64_t id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end())
        throw std::out_of_range("unknown request id " + std::to_string(id));
    return *it->second;
}

} // namespace poolsim
