#include "poolsim/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "poolsim/engine.hpp"
#include "poolsim/io.hpp"
#include "poolsim/kpi.hpp"
#include "poolsim/sweep.hpp"

namespace poolsim::cli {

namespace {

bool log_enabled() {
    const char* env = std::getenv("POOLSIM_LOG");
    return env != nullptr && env[0] != '\0' && std::string(env) != "0";
}

void log_line(const std::string& msg) {
    if (log_enabled())
        std::cerr << "poolsim: " << msg << '\n';
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + out_dir + ": " + ec.message());
}

int map_exception(const std::exception& e) {
    std::cerr << "poolsim: error: " << e.what() << '\n';
    if (dynamic_cast<const IoError*>(&e))
        return kExitIo;
    return kExitBadConfig;
}

} // namespace

int run_scenario_command(const std::string& config_path, const std::string& out_dir,
                         std::optional<std::uint64_t> seed_override,
                         std::optional<PricingPolicy> policy_override) {
    try {
        ScenarioConfig cfg = load_scenario_config(config_path, !policy_override.has_value());
        if (seed_override)
            cfg.seed = *seed_override;
        if (policy_override)
            cfg.pricing.policy = *policy_override;

        log_line("running scenario from " + config_path);
        const EventLog log = run(cfg);
        const KpiReport kpi = compute_kpis(log);

        ensure_out_dir(out_dir);
        const std::filesystem::path dir(out_dir);
        write_events_csv(log, (dir / "events.csv").string());
        write_outcomes_csv(log, (dir / "outcomes.csv").string());
        write_driver_ledger_csv(log, (dir / "drivers.csv").string());
        write_kpi_json(kpi, (dir / "kpi.json").string());
        log_line("wrote 4 files to " + out_dir);
        return kExitOk;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

int run_sweep_command(const std::string& sweep_path, const std::string& out_dir,
                      int parallelism) {
    try {
        const SweepSpec spec = load_sweep_spec(sweep_path);
        log_line("running sweep from " + sweep_path);
        const std::vector<SweepRow> rows = run_sweep(spec, parallelism);

        ensure_out_dir(out_dir);
        write_sweep_summary_csv(rows, (std::filesystem::path(out_dir) / "summary.csv").string());

        std::size_t failures = 0;
        for (const SweepRow& row : rows)
            failures += !row.ok;
        log_line("sweep finished, " + std::to_string(rows.size()) + " rows, " +
                 std::to_string(failures) + " failures");
        return failures == 0 ? kExitOk : kExitCellFailures;
    } catch (const std::exception& e) {
        return map_exception(e);
    }
}

} // namespace poolsim::cli
