#pragma once

#include <string>

#include "poolsim/engine.hpp"
#include "poolsim/kpi.hpp"

namespace poolsim {

// All writers emit headered, comma-separated text with '.' decimal separator
// and fixed field order; identical inputs produce identical bytes.

// `time_s,kind,driver_id,ride_id,request_ids` (ids ;-separated)
void write_events_csv(const EventLog& log, const std::string& path);

// `request_id,outcome,wait_s,in_vehicle_s,fare_eur` (blank metrics when expired)
void write_outcomes_csv(const EventLog& log, const std::string& path);

// `driver_id,n_rides,n_pooled,revenue_eur,cost_eur,profit_eur,busy_s,idle_s`
void write_driver_ledger_csv(const EventLog& log, const std::string& path);

// Single JSON document of the whole report.
void write_kpi_json(const KpiReport& report, const std::string& path);

// Scenario config document (JSON mirroring ScenarioConfig field names).
// Unknown keys are errors; `pricing.policy` is required unless
// require_policy is false (sweep bases supply it per cell).
ScenarioConfig parse_scenario_config(const std::string& json_text, bool require_policy = true);
ScenarioConfig load_scenario_config(const std::string& path, bool require_policy = true);

} // namespace poolsim
