#include "poolsim/kpi.hpp"

#include <algorithm>
#include <cmath>

namespace poolsim {

double service_rate(const EventLog& log) {
    if (log.n_requests == 0)
        return 0.0;
    std::int64_t served = 0;
    for (const RequestOutcome& o : log.outcomes)
        served += o.outcome == OutcomeKind::Served;
    return static_cast<double>(served) / static_cast<double>(log.n_requests);
}

double occupancy(const EventLog& log) {
    double riding_s = 0.0;
    for (const RequestOutcome& o : log.outcomes)
        if (o.outcome == OutcomeKind::Served)
            riding_s += o.in_vehicle_s;
    double driving_s = 0.0;
    for (const ServedRideRecord& ride : log.rides)
        driving_s += ride.driving_time_s;
    return driving_s > 0.0 ? riding_s / driving_s : 0.0;
}

Cents platform_commission(const EventLog& log) {
    Cents total = 0;
    for (const ServedRideRecord& ride : log.rides)
        total += ride.total_fare - ride.driver_revenue;
    return total;
}

namespace {

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty())
        return 0.0;
    if (sorted.size() == 1)
        return sorted.front();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size())
        return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

} // namespace

WaitStats wait_stats(const EventLog& log) {
    std::vector<double> waits;
    for (const RequestOutcome& o : log.outcomes)
        if (o.outcome == OutcomeKind::Served)
            waits.push_back(o.wait_s);
    WaitStats stats;
    if (waits.empty())
        return stats;
    std::sort(waits.begin(), waits.end());
    double sum = 0.0;
    for (double w : waits)
        sum += w;
    stats.mean_s = sum / static_cast<double>(waits.size());
    stats.median_s = quantile(waits, 0.5);
    stats.p90_s = quantile(waits, 0.9);
    return stats;
}

double gini(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0)
        return 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += sorted[i];
        // (2i - n - 1) with 1-based rank i
        weighted += (2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0) * sorted[i];
    }
    if (total <= 0.0)
        return 0.0;
    return weighted / (static_cast<double>(n) * total);
}

std::pair<std::vector<Cents>, double> revenue_distribution(const EventLog& log) {
    std::vector<Cents> revenue;
    revenue.reserve(log.drivers.size());
    std::vector<double> eur;
    eur.reserve(log.drivers.size());
    for (const DriverLedger& ledger : log.drivers) {
        revenue.push_back(ledger.revenue);
        eur.push_back(cents_to_eur(ledger.revenue));
    }
    return {std::move(revenue), gini(eur)};
}

KpiReport compute_kpis(const EventLog& log) {
    KpiReport report;
    report.n_requests = log.n_requests;
    for (const RequestOutcome& o : log.outcomes) {
        if (o.outcome != OutcomeKind::Served)
            continue;
        ++report.n_served;
        const ServedRideRecord& ride = log.rides[o.ride_id];
        if (ride.kind == RideKind::Pooled)
            ++report.n_pooled_served;
    }
    report.service_rate = service_rate(log);
    auto [revenue, g] = revenue_distribution(log);
    report.per_driver_revenue = std::move(revenue);
    report.revenue_gini = g;
    report.platform_commission = platform_commission(log);
    const WaitStats waits = wait_stats(log);
    report.wait_mean_s = waits.mean_s;
    report.wait_median_s = waits.median_s;
    report.wait_p90_s = waits.p90_s;
    report.occupancy = occupancy(log);
    return report;
}

} // namespace poolsim
