#include "poolsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <thread>

#include "json_util.hpp"
#include "poolsim/io.hpp"

namespace poolsim {

using namespace jsonutil;

SweepSpec parse_sweep_spec(const std::string& json_text) {
    const json root = parse_json_text(json_text);
    if (!root.is_object())
        throw ValidationError("config: top level must be an object");
    check_keys(root, "", {"driver_counts", "request_rates", "policies", "seeds", "base"});

    SweepSpec spec;
    if (!root.contains("driver_counts") || !root.at("driver_counts").is_array() ||
        root.at("driver_counts").empty())
        bad_field("driver_counts", "must be a non-empty array of integers");
    for (const json& v : root.at("driver_counts")) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
            bad_field("driver_counts", "must contain integers >= 1");
        spec.driver_counts.push_back(v.get<int>());
    }

    if (!root.contains("request_rates") || !root.at("request_rates").is_array() ||
        root.at("request_rates").empty())
        bad_field("request_rates", "must be a non-empty array of numbers");
    for (const json& v : root.at("request_rates")) {
        if (!v.is_number() || v.get<double>() <= 0.0)
            bad_field("request_rates", "must contain numbers > 0");
        spec.request_rates.push_back(v.get<double>());
    }

    if (!root.contains("policies") || !root.at("policies").is_array() ||
        root.at("policies").empty())
        bad_field("policies", "must be a non-empty array of policy names");
    for (const json& v : root.at("policies")) {
        if (!v.is_string())
            bad_field("policies", "must contain strings");
        const auto policy = parse_policy(v.get<std::string>());
        if (!policy)
            bad_field("policies", "must contain 'solo_only', 'forced_pooling' or 'profit_max'");
        spec.policies.push_back(*policy);
    }

    if (root.contains("base")) {
        if (!root.at("base").is_object())
            bad_field("base", "must be an object");
        spec.base = parse_scenario_config(root.at("base").dump(), /*require_policy=*/false);
    }

    if (!root.contains("seeds"))
        bad_field("seeds", "is required (count or explicit list)");
    const json& seeds = root.at("seeds");
    if (seeds.is_number_integer()) {
        const std::int64_t n = seeds.get<std::int64_t>();
        if (n < 1)
            bad_field("seeds", "must be >= 1");
        for (std::int64_t i = 0; i < n; ++i)
            spec.seeds.push_back(spec.base.seed + static_cast<std::uint64_t>(i));
    } else if (seeds.is_array() && !seeds.empty()) {
        for (const json& v : seeds) {
            if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                bad_field("seeds", "must contain integers >= 0");
            spec.seeds.push_back(v.get<std::uint64_t>());
        }
    } else {
        bad_field("seeds", "must be a count or a non-empty array");
    }

    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    return parse_sweep_spec(read_file(path));
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int parallelism) {
    if (parallelism < 1)
        throw std::invalid_argument("parallelism must be >= 1");
    if (std::holds_alternative<FileDemandSpec>(spec.base.demand.source))
        throw ValidationError("sweeps vary the request rate and need poisson demand in 'base'");

    std::vector<SweepRow> rows;
    for (PricingPolicy policy : spec.policies)
        for (int drivers : spec.driver_counts)
            for (double rate : spec.request_rates)
                for (std::uint64_t seed : spec.seeds) {
                    SweepRow row;
                    row.policy = policy;
                    row.n_drivers = drivers;
                    row.request_rate = rate;
                    row.seed = seed;
                    rows.push_back(std::move(row));
                }

    // deterministic row order regardless of scheduling
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.policy != b.policy)
            return static_cast<int>(a.policy) < static_cast<int>(b.policy);
        if (a.n_drivers != b.n_drivers)
            return a.n_drivers < b.n_drivers;
        if (a.request_rate != b.request_rate)
            return a.request_rate < b.request_rate;
        return a.seed < b.seed;
    });

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size())
                return;
            SweepRow& row = rows[i];
            ScenarioConfig cfg = spec.base; // each cell owns its config and rng
            cfg.drivers.count = row.n_drivers;
            cfg.demand.source = PoissonDemandSpec{row.request_rate};
            cfg.pricing.policy = row.policy;
            cfg.seed = row.seed;
            try {
                row.kpi = compute_kpis(run(cfg));
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
            }
        }
    };

    const int n_workers = std::min<int>(parallelism, static_cast<int>(rows.size()) > 0
                                                         ? static_cast<int>(rows.size())
                                                         : 1);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();

    return rows;
}

void write_sweep_summary_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path);
    out << "policy,n_drivers,req_rate,seed,service_rate,gini,commission_eur,wait_mean_s,"
           "occupancy,status\n";
    char buf[256];
    for (const SweepRow& row : rows) {
        out << policy_name(row.policy) << ',' << row.n_drivers << ',';
        std::snprintf(buf, sizeof buf, "%.3f", row.request_rate);
        out << buf << ',' << row.seed << ',';
        if (row.ok) {
            std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.2f,%.3f,%.6f,ok", row.kpi.service_rate,
                          row.kpi.revenue_gini, cents_to_eur(row.kpi.platform_commission),
                          row.kpi.wait_mean_s, row.kpi.occupancy);
            out << buf;
        } else {
            std::string reason = row.error;
            std::replace(reason.begin(), reason.end(), ',', ';');
            std::replace(reason.begin(), reason.end(), '\n', ' ');
            out << ",,,,," << "error: " << reason;
        }
        out << '\n';
    }
    if (!out.flush())
        throw IoError("cannot write " + path);
}

} // namespace poolsim
