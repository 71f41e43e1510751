#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "poolsim/engine.hpp"
#include "poolsim/kpi.hpp"

using namespace poolsim;

namespace {

TripRequest request_on(const Network& net, std::int64_t id, NodeId o, NodeId d, double t,
                       double patience = 2000.0) {
    TripRequest req;
    req.id = id;
    req.origin = o;
    req.destination = d;
    req.request_time_s = t;
    req.patience_s = patience;
    req.direct_distance_m = net.distance_m(o, d);
    req.direct_time_s = net.travel_time_s(o, d);
    return req;
}

ScenarioConfig scenario(PricingPolicy policy, std::vector<NodeId> positions,
                        double horizon_s = 7200.0) {
    ScenarioConfig cfg;
    cfg.pricing.policy = policy;
    cfg.drivers.count = static_cast<int>(positions.size());
    cfg.drivers.initial_positions = std::move(positions);
    cfg.sim_horizon_s = horizon_s;
    return cfg;
}

EventLog fixture_log(std::uint64_t seed = 3) {
    ScenarioConfig cfg;
    cfg.network.source = GridNetworkSpec{5, 5, 300.0};
    cfg.demand.source = PoissonDemandSpec{200.0};
    cfg.demand.patience_s = 600.0;
    cfg.drivers.count = 5;
    cfg.pricing.policy = PricingPolicy::ProfitMax;
    cfg.sim_horizon_s = 2 * 3600.0;
    cfg.seed = seed;
    return run(cfg);
}

} // namespace

TEST_CASE("service rate counts served over requested") {
    SUBCASE("degenerate logs") {
        EventLog empty;
        CHECK(service_rate(empty) == 0.0); // 0/0 convention

        EventLog none;
        none.n_requests = 100;
        for (int i = 0; i < 100; ++i)
            none.outcomes.push_back({i, OutcomeKind::Expired, -1, 0, 0, 0});
        CHECK(service_rate(none) == 0.0);
    }
    SUBCASE("all served") {
        const Network net = make_grid(3, 3, 500.0);
        const std::vector<TripRequest> requests{request_on(net, 0, 0, 8, 0.0)};
        const EventLog log = run(net, requests, scenario(PricingPolicy::SoloOnly, {0}));
        CHECK(service_rate(log) == 1.0);
    }
    SUBCASE("fixture recount") {
        const EventLog log = fixture_log();
        std::int64_t served = 0;
        for (const RequestOutcome& o : log.outcomes)
            served += o.outcome == OutcomeKind::Served;
        CHECK(log.n_requests > 0);
        CHECK(service_rate(log) ==
              static_cast<double>(served) / static_cast<double>(log.n_requests));
    }
}

TEST_CASE("occupancy is rider seconds over driving seconds") {
    const Network net = make_grid(3, 3, 500.0);

    SUBCASE("solo trip with no pickup leg") {
        const std::vector<TripRequest> requests{request_on(net, 0, 0, 8, 0.0)};
        const EventLog log = run(net, requests, scenario(PricingPolicy::SoloOnly, {0}));
        CHECK(occupancy(log) == 1.0);
    }
    SUBCASE("two co-riders with no pickup leg") {
        ScenarioConfig cfg = scenario(PricingPolicy::ForcedPooling, {0});
        cfg.sharing.prefs.pooled_time_factor = 1.0;
        const std::vector<TripRequest> requests{request_on(net, 0, 0, 8, 0.0),
                                                request_on(net, 1, 0, 8, 0.0)};
        const EventLog log = run(net, requests, cfg);
        REQUIRE(log.rides.size() == 1);
        CHECK(occupancy(log) == 2.0);
    }
    SUBCASE("pickup leg dilutes occupancy") {
        // pickup 2 km (200 s), trip 10 km (1000 s): 1000 / 1200
        std::vector<NetworkNode> nodes{{0, 0, 0}, {1, 2000, 0}, {2, 12000, 0}};
        std::vector<NetworkEdge> edges{{0, 1, 2000}, {1, 0, 2000}, {1, 2, 10000}, {2, 1, 10000}};
        const Network line(std::move(nodes), std::move(edges), 10.0);
        const std::vector<TripRequest> requests{request_on(line, 0, 1, 2, 0.0)};
        const EventLog log = run(line, requests, scenario(PricingPolicy::SoloOnly, {0}));
        CHECK(occupancy(log) == doctest::Approx(1000.0 / 1200.0).epsilon(1e-12));
    }
    SUBCASE("no rides means zero occupancy") {
        EventLog empty;
        CHECK(occupancy(empty) == 0.0);
    }
}

TEST_CASE("gini") {
    SUBCASE("perfect equality") {
        const std::vector<double> equal{10, 10, 10, 10};
        CHECK(gini(equal) == 0.0);
    }
    SUBCASE("hand-computed concentration") {
        const std::vector<double> skewed{0, 0, 0, 40};
        CHECK(gini(skewed) == doctest::Approx(0.75).epsilon(1e-12));
    }
    SUBCASE("all zero") {
        const std::vector<double> zero{0, 0, 0};
        CHECK(gini(zero) == 0.0);
    }
    SUBCASE("matches the pairwise-difference definition") {
        Rng rng(8);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> values;
            const int n = 1 + static_cast<int>(rng.uniform_below(12));
            for (int i = 0; i < n; ++i)
                values.push_back(rng.uniform(0.0, 100.0));
            CHECK(gini(values) ==
                  doctest::Approx(oracle::gini_by_pairs(values)).epsilon(1e-9));
        }
    }
    SUBCASE("scale invariance") {
        Rng rng(9);
        std::vector<double> values{3, 1, 4, 1, 5, 9, 2, 6};
        const double base = gini(values);
        for (double c : {0.01, 2.0, 1000.0}) {
            std::vector<double> scaled;
            for (double v : values)
                scaled.push_back(c * v);
            CHECK(gini(scaled) == doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("platform commission") {
    const Network net = make_grid(3, 3, 500.0);

    SUBCASE("single 10 km ride at default rates") {
        // build a 10 km trip on a line so F = 15.00
        std::vector<NetworkNode> nodes{{0, 0, 0}, {1, 10000, 0}};
        std::vector<NetworkEdge> edges{{0, 1, 10000}, {1, 0, 10000}};
        const Network line(std::move(nodes), std::move(edges), 10.0);
        const std::vector<TripRequest> requests{request_on(line, 0, 0, 1, 0.0)};
        const EventLog log = run(line, requests, scenario(PricingPolicy::SoloOnly, {0}));
        CHECK(platform_commission(log) == 375); // 3.75 eur of 15.00
    }
    SUBCASE("no rides, no commission") {
        EventLog empty;
        CHECK(platform_commission(empty) == 0);
    }
    SUBCASE("fixture satisfies the conservation identity") {
        const EventLog log = fixture_log();
        Cents fares = 0;
        for (const RequestOutcome& o : log.outcomes)
            if (o.outcome == OutcomeKind::Served)
                fares += o.fare;
        Cents revenue = 0;
        for (const DriverLedger& d : log.drivers)
            revenue += d.revenue;
        CHECK(platform_commission(log) == fares - revenue);
    }
}

TEST_CASE("wait statistics cover served requests only") {
    SUBCASE("single wait value") {
        EventLog log;
        log.n_requests = 2;
        log.outcomes.push_back({0, OutcomeKind::Served, 0, 60.0, 100.0, 100});
        log.outcomes.push_back({1, OutcomeKind::Expired, -1, 0, 0, 0});
        const WaitStats stats = wait_stats(log);
        CHECK(stats.mean_s == 60.0);
        CHECK(stats.median_s == 60.0);
        CHECK(stats.p90_s == 60.0);
    }
    SUBCASE("three waits") {
        EventLog log;
        log.n_requests = 3;
        log.outcomes.push_back({0, OutcomeKind::Served, 0, 60.0, 1, 1});
        log.outcomes.push_back({1, OutcomeKind::Served, 1, 120.0, 1, 1});
        log.outcomes.push_back({2, OutcomeKind::Served, 2, 180.0, 1, 1});
        const WaitStats stats = wait_stats(log);
        CHECK(stats.mean_s == 120.0);
        CHECK(stats.median_s == 120.0);
        CHECK(stats.p90_s == doctest::Approx(168.0)); // interpolated at rank 1.8
    }
    SUBCASE("fixture recomputation") {
        const EventLog log = fixture_log();
        std::vector<double> waits;
        for (const RequestOutcome& o : log.outcomes)
            if (o.outcome == OutcomeKind::Served)
                waits.push_back(o.wait_s);
        REQUIRE(!waits.empty());
        double sum = 0;
        for (double w : waits)
            sum += w;
        CHECK(wait_stats(log).mean_s ==
              doctest::Approx(sum / static_cast<double>(waits.size())).epsilon(1e-12));
    }
}

TEST_CASE("revenue distribution is keyed by driver id") {
    const EventLog log = fixture_log();
    const auto [revenue, g] = revenue_distribution(log);
    REQUIRE(revenue.size() == log.drivers.size());
    for (std::size_t i = 0; i < revenue.size(); ++i)
        CHECK(revenue[i] == log.drivers[i].revenue);
    std::vector<double> eur;
    for (Cents c : revenue)
        eur.push_back(cents_to_eur(c));
    CHECK(g == doctest::Approx(oracle::gini_by_pairs(eur)).epsilon(1e-9));
}

TEST_CASE("aggregate report is consistent with the per-metric functions") {
    const EventLog log = fixture_log(11);
    const KpiReport report = compute_kpis(log);
    CHECK(report.n_requests == log.n_requests);
    CHECK(report.service_rate == service_rate(log));
    CHECK(report.platform_commission == platform_commission(log));
    CHECK(report.occupancy == occupancy(log));
    CHECK(report.wait_mean_s == wait_stats(log).mean_s);
    CHECK(report.n_served >= report.n_pooled_served);
    CHECK(report.revenue_gini >= 0.0);
    CHECK(report.revenue_gini <= 1.0);
    CHECK(report.occupancy <= 3.0); // K_max bound
}
