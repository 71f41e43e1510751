#include "poolsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

#include "json_util.hpp"

namespace poolsim {

using namespace jsonutil;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    return out;
}

void close_out(std::ofstream& out, const std::string& path) {
    if (!out.flush())
        throw IoError("cannot write " + path);
}

std::string join_ids(const std::vector<std::int64_t>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i)
            out += ';';
        out += std::to_string(ids[i]);
    }
    return out;
}

} // namespace

void write_events_csv(const EventLog& log, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "time_s,kind,driver_id,ride_id,request_ids\n";
    for (const SimEvent& ev : log.events) {
        out << fmt("%.3f", ev.time_s) << ',' << event_kind_name(ev.kind) << ',';
        if (ev.driver_id >= 0)
            out << ev.driver_id;
        out << ',';
        if (ev.ride_id >= 0)
            out << ev.ride_id;
        out << ',' << join_ids(ev.request_ids) << '\n';
    }
    close_out(out, path);
}

void write_outcomes_csv(const EventLog& log, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "request_id,outcome,wait_s,in_vehicle_s,fare_eur\n";
    for (const RequestOutcome& o : log.outcomes) {
        out << o.request_id << ',';
        if (o.outcome == OutcomeKind::Served) {
            out << "served," << fmt("%.3f", o.wait_s) << ',' << fmt("%.3f", o.in_vehicle_s) << ','
                << fmt("%.2f", cents_to_eur(o.fare));
        } else {
            out << "expired,,,";
        }
        out << '\n';
    }
    close_out(out, path);
}

void write_driver_ledger_csv(const EventLog& log, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "driver_id,n_rides,n_pooled,revenue_eur,cost_eur,profit_eur,busy_s,idle_s\n";
    for (const DriverLedger& d : log.drivers) {
        out << d.driver_id << ',' << d.n_rides << ',' << d.n_pooled << ','
            << fmt("%.2f", cents_to_eur(d.revenue)) << ',' << fmt("%.2f", cents_to_eur(d.cost))
            << ',' << fmt("%.2f", cents_to_eur(d.profit)) << ',' << fmt("%.3f", d.busy_s) << ','
            << fmt("%.3f", d.idle_s) << '\n';
    }
    close_out(out, path);
}

void write_kpi_json(const KpiReport& report, const std::string& path) {
    json j;
    j["n_requests"] = report.n_requests;
    j["n_served"] = report.n_served;
    j["n_pooled_served"] = report.n_pooled_served;
    j["service_rate"] = report.service_rate;
    json revenue = json::array();
    for (Cents c : report.per_driver_revenue)
        revenue.push_back(cents_to_eur(c));
    j["per_driver_revenue_eur"] = std::move(revenue);
    j["revenue_gini"] = report.revenue_gini;
    j["platform_commission_eur"] = cents_to_eur(report.platform_commission);
    j["wait_mean_s"] = report.wait_mean_s;
    j["wait_median_s"] = report.wait_median_s;
    j["wait_p90_s"] = report.wait_p90_s;
    j["occupancy"] = report.occupancy;

    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    close_out(out, path);
}

ScenarioConfig parse_scenario_config(const std::string& json_text, bool require_policy) {
    const json root = parse_json_text(json_text);
    if (!root.is_object())
        throw ValidationError("config: top level must be an object");
    check_keys(root, "", {"network", "demand", "drivers", "pricing", "sharing", "sim"});

    ScenarioConfig cfg;

    const json& network = get_object(root, "", "network");
    check_keys(network, "network",
               {"kind", "rows", "cols", "edge_len_m", "nodes_file", "edges_file", "speed_kmh"});
    const std::string net_kind = get_string(network, "network", "kind", "grid");
    if (net_kind == "grid") {
        GridNetworkSpec grid;
        grid.rows = static_cast<int>(get_int(network, "network", "rows", grid.rows));
        grid.cols = static_cast<int>(get_int(network, "network", "cols", grid.cols));
        grid.edge_len_m = get_double(network, "network", "edge_len_m", grid.edge_len_m);
        cfg.network.source = grid;
    } else if (net_kind == "file") {
        FileNetworkSpec file;
        file.nodes_file = get_string(network, "network", "nodes_file", "");
        file.edges_file = get_string(network, "network", "edges_file", "");
        if (file.nodes_file.empty() || file.edges_file.empty())
            bad_field("network.nodes_file/edges_file", "are required for kind 'file'");
        cfg.network.source = file;
    } else {
        bad_field("network.kind", "must be 'grid' or 'file'");
    }
    cfg.network.speed_kmh = get_double(network, "network", "speed_kmh", cfg.network.speed_kmh);

    const json& demand = get_object(root, "", "demand");
    check_keys(demand, "demand", {"kind", "rate_per_h", "patience_s", "file"});
    const std::string demand_kind = get_string(demand, "demand", "kind", "poisson");
    if (demand_kind == "poisson") {
        PoissonDemandSpec poisson;
        poisson.rate_per_hour = get_double(demand, "demand", "rate_per_h", poisson.rate_per_hour);
        cfg.demand.source = poisson;
    } else if (demand_kind == "file") {
        FileDemandSpec file;
        file.file = get_string(demand, "demand", "file", "");
        if (file.file.empty())
            bad_field("demand.file", "is required for kind 'file'");
        cfg.demand.source = file;
    } else {
        bad_field("demand.kind", "must be 'poisson' or 'file'");
    }
    cfg.demand.patience_s = get_double(demand, "demand", "patience_s", cfg.demand.patience_s);

    const json& drivers = get_object(root, "", "drivers");
    check_keys(drivers, "drivers",
               {"count", "cost_per_km", "value_of_time_eur_s", "pooled_profit_factor_min",
                "pooled_profit_factor_max", "choice", "mnl_scale", "decline_allowed",
                "initial_positions"});
    cfg.drivers.count = static_cast<int>(get_int(drivers, "drivers", "count", cfg.drivers.count));
    cfg.drivers.cost_per_km = get_double(drivers, "drivers", "cost_per_km", cfg.drivers.cost_per_km);
    cfg.drivers.value_of_time_eur_s =
        get_double(drivers, "drivers", "value_of_time_eur_s", cfg.drivers.value_of_time_eur_s);
    cfg.drivers.pooled_profit_factor_min = get_double(drivers, "drivers", "pooled_profit_factor_min",
                                                      cfg.drivers.pooled_profit_factor_min);
    cfg.drivers.pooled_profit_factor_max = get_double(drivers, "drivers", "pooled_profit_factor_max",
                                                      cfg.drivers.pooled_profit_factor_max);
    const std::string choice = get_string(drivers, "drivers", "choice", "deterministic");
    if (choice == "deterministic")
        cfg.drivers.choice_mode = ChoiceMode::Deterministic;
    else if (choice == "mnl")
        cfg.drivers.choice_mode = ChoiceMode::Mnl;
    else
        bad_field("drivers.choice", "must be 'deterministic' or 'mnl'");
    cfg.drivers.mnl_scale = get_double(drivers, "drivers", "mnl_scale", cfg.drivers.mnl_scale);
    cfg.drivers.decline_allowed =
        get_bool(drivers, "drivers", "decline_allowed", cfg.drivers.decline_allowed);
    if (drivers.contains("initial_positions")) {
        const json& positions = drivers.at("initial_positions");
        if (!positions.is_array())
            bad_field("drivers.initial_positions", "must be an array of node ids");
        for (const json& p : positions) {
            if (!p.is_number_integer())
                bad_field("drivers.initial_positions", "must contain integers");
            cfg.drivers.initial_positions.push_back(p.get<NodeId>());
        }
    }

    const json& pricing = get_object(root, "", "pricing");
    check_keys(pricing, "pricing", {"fare_per_km", "discount", "commission", "policy"});
    cfg.pricing.fare_per_km = get_double(pricing, "pricing", "fare_per_km", cfg.pricing.fare_per_km);
    cfg.pricing.discount = get_double(pricing, "pricing", "discount", cfg.pricing.discount);
    cfg.pricing.commission = get_double(pricing, "pricing", "commission", cfg.pricing.commission);
    if (pricing.contains("policy")) {
        const std::string name = get_string(pricing, "pricing", "policy", "");
        const auto policy = parse_policy(name);
        if (!policy)
            bad_field("pricing.policy",
                      "must be one of 'solo_only', 'forced_pooling', 'profit_max'");
        cfg.pricing.policy = *policy;
    } else if (require_policy) {
        throw ValidationError("config: missing required field 'pricing.policy'");
    }

    const json& sharing = get_object(root, "", "sharing");
    check_keys(sharing, "sharing",
               {"max_degree", "pairing_window_s", "value_of_time_eur_s", "pooled_time_factor"});
    cfg.sharing.max_degree =
        static_cast<int>(get_int(sharing, "sharing", "max_degree", cfg.sharing.max_degree));
    cfg.sharing.pairing_window_s =
        get_double(sharing, "sharing", "pairing_window_s", cfg.sharing.pairing_window_s);
    cfg.sharing.prefs.value_of_time_eur_s = get_double(sharing, "sharing", "value_of_time_eur_s",
                                                       cfg.sharing.prefs.value_of_time_eur_s);
    cfg.sharing.prefs.pooled_time_factor =
        get_double(sharing, "sharing", "pooled_time_factor", cfg.sharing.prefs.pooled_time_factor);

    const json& sim = get_object(root, "", "sim");
    check_keys(sim, "sim", {"horizon_s", "seed"});
    cfg.sim_horizon_s = get_double(sim, "sim", "horizon_s", cfg.sim_horizon_s);
    const std::int64_t seed = get_int(sim, "sim", "seed", static_cast<std::int64_t>(cfg.seed));
    if (seed < 0)
        bad_field("sim.seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);

    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path, bool require_policy) {
    return parse_scenario_config(read_file(path), require_policy);
}

} // namespace poolsim
