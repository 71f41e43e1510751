#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "poolsim/economics.hpp"
#include "poolsim/rng.hpp"

using namespace poolsim;

namespace {

// line network: driver node 0, pickup node 1 (2 km away), dropoff node 2
// (10 km further); 10 m/s
Network line_network() {
    std::vector<NetworkNode> nodes{{0, 0, 0}, {1, 2000, 0}, {2, 12000, 0}};
    std::vector<NetworkEdge> edges{{0, 1, 2000}, {1, 0, 2000}, {1, 2, 10000}, {2, 1, 10000}};
    return Network(std::move(nodes), std::move(edges), 10.0);
}

TripRequest ten_km_request(const Network& net, std::int64_t id) {
    TripRequest req;
    req.id = id;
    req.origin = 1;
    req.destination = 2;
    req.request_time_s = 0.0;
    req.patience_s = 1200.0;
    req.direct_distance_m = net.distance_m(1, 2);
    req.direct_time_s = net.travel_time_s(1, 2);
    return req;
}

PricedRide fake_priced(std::int64_t id, double effective_utility) {
    PricedRide ride;
    ride.candidate.id = id;
    ride.effective_utility_eur = effective_utility;
    return ride;
}

} // namespace

TEST_CASE("distance-based fares") {
    PricingParams p; // 1.5 eur/km, discount 0.25
    TripRequest req;
    req.direct_distance_m = 10000.0;
    CHECK(fare(req, RideKind::Solo, p) == 1500);
    CHECK(fare(req, RideKind::Pooled, p) == 1125);
    req.direct_distance_m = 0.0;
    CHECK(fare(req, RideKind::Solo, p) == 0);
    CHECK(fare(req, RideKind::Pooled, p) == 0);
}

TEST_CASE("pricing a solo ride end to end") {
    const Network net = line_network();
    const std::vector<TripRequest> batch{ten_km_request(net, 0)};
    const RequestLookup lookup(batch);
    PricingParams p;
    DriverProfile d; // 0.5 eur/km, beta_t = 0

    const PricedRide ride = price_ride(make_solo_candidate(batch[0]), 0, p, d, net, lookup);
    CHECK(ride.pickup_distance_m == 2000.0);
    CHECK(ride.pickup_time_s == 200.0);
    CHECK(ride.total_fare == 1500);
    CHECK(ride.driver_revenue == 1125);
    CHECK(ride.operating_cost == 600);
    CHECK(ride.profit == 525);
    CHECK(ride.platform_commission() == 375);
    CHECK(ride.effective_utility_eur == doctest::Approx(5.25));
}

TEST_CASE("zero-length ride from the first stop costs nothing") {
    const Network net = line_network();
    std::vector<TripRequest> batch{ten_km_request(net, 0)};
    batch[0].direct_distance_m = 0.0; // fabricated degenerate trip
    batch[0].direct_time_s = 0.0;
    const RequestLookup lookup(batch);
    PricingParams p;
    DriverProfile d;

    RideCandidate cand = make_solo_candidate(batch[0]);
    cand.stops[0].node = 1;
    cand.stops[1].node = 1;
    const PricedRide ride = price_ride(cand, 1, p, d, net, lookup);
    CHECK(ride.operating_cost == 0);
    CHECK(ride.profit == ride.driver_revenue);
}

TEST_CASE("pooled pair of identical trips beats both solos") {
    const Network net = line_network();
    std::vector<TripRequest> batch{ten_km_request(net, 0), ten_km_request(net, 1)};
    const RequestLookup lookup(batch);
    PricingParams p;
    DriverProfile d;

    RideCandidate pooled;
    pooled.kind = RideKind::Pooled;
    pooled.members = {0, 1};
    pooled.stops = {{Stop::Kind::Pickup, 0, 1},
                    {Stop::Kind::Pickup, 1, 1},
                    {Stop::Kind::Dropoff, 0, 2},
                    {Stop::Kind::Dropoff, 1, 2}};
    pooled.plans = {{0, 0.0, 1000.0, 0.0}, {1, 0.0, 1000.0, 0.0}};
    pooled.service_distance_m = 10000.0;
    pooled.service_time_s = 1000.0;

    const PricedRide pair = price_ride(pooled, 1, p, d, net, lookup); // driver at the stop
    CHECK(pair.total_fare == 2250);
    CHECK(pair.driver_revenue == 1688); // 16.875 eur half-up at cent resolution
    CHECK(pair.operating_cost == 500);
    CHECK(pair.profit == 1188);

    const PricedRide solo_far = price_ride(make_solo_candidate(batch[0]), 0, p, d, net, lookup);
    const PricedRide solo_near = price_ride(make_solo_candidate(batch[0]), 1, p, d, net, lookup);
    CHECK(solo_far.profit == 525);
    CHECK(solo_near.profit == 625);
    CHECK(pair.profit > solo_near.profit);
    CHECK(pair.profit > solo_far.profit);
}

TEST_CASE("equation identities hold for randomized tuples") {
    const Network net = line_network();
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        std::vector<TripRequest> batch{ten_km_request(net, 0), ten_km_request(net, 1)};
        batch[0].direct_distance_m = rng.uniform(100.0, 20000.0);
        batch[1].direct_distance_m = rng.uniform(100.0, 20000.0);
        const RequestLookup lookup(batch);

        PricingParams p;
        p.fare_per_km = rng.uniform(0.5, 3.0);
        p.discount = rng.uniform(0.0, 0.6);
        p.commission = rng.uniform(0.0, 0.6);
        DriverProfile d;
        d.cost_per_km = rng.uniform(0.0, 1.5);
        d.value_of_time_eur_s = rng.uniform(0.0, 0.01);
        d.pooled_profit_factor = rng.uniform(0.1, 1.0);

        RideCandidate pooled;
        pooled.kind = RideKind::Pooled;
        pooled.members = {0, 1};
        pooled.stops = {{Stop::Kind::Pickup, 0, 1},
                        {Stop::Kind::Pickup, 1, 1},
                        {Stop::Kind::Dropoff, 0, 2},
                        {Stop::Kind::Dropoff, 1, 2}};
        pooled.plans = {{0, 0.0, 1000.0, 0.0}, {1, 0.0, 1000.0, 0.0}};
        pooled.service_distance_m = rng.uniform(0.0, 30000.0);
        pooled.service_time_s = pooled.service_distance_m / 10.0;

        const PricedRide ride = price_ride(pooled, 0, p, d, net, lookup);
        Cents fare_sum = 0;
        for (std::size_t m = 0; m < pooled.members.size(); ++m) {
            CHECK(ride.member_fares[m] == fare(lookup.at(pooled.members[m]), pooled.kind, p));
            fare_sum += ride.member_fares[m];
        }
        CHECK(ride.total_fare == fare_sum);
        CHECK(ride.driver_revenue ==
              std::llround((1.0 - p.commission) * static_cast<double>(ride.total_fare) / 100.0 *
                           100.0));
        CHECK(ride.profit == ride.driver_revenue - ride.operating_cost);
        CHECK(ride.platform_commission() + ride.driver_revenue == ride.total_fare);
    }
}

TEST_CASE("policy filter") {
    RideCandidate solo;
    solo.kind = RideKind::Solo;
    RideCandidate pooled;
    pooled.kind = RideKind::Pooled;
    const std::vector<RideCandidate> both{solo, pooled};

    const auto only_solo = filter_by_policy(both, PricingPolicy::SoloOnly);
    REQUIRE(only_solo.size() == 1);
    CHECK(only_solo[0].kind == RideKind::Solo);

    const auto only_pooled = filter_by_policy(both, PricingPolicy::ForcedPooling);
    REQUIRE(only_pooled.size() == 1);
    CHECK(only_pooled[0].kind == RideKind::Pooled);

    CHECK(filter_by_policy(both, PricingPolicy::ProfitMax).size() == 2);

    // idempotence
    CHECK(filter_by_policy(only_solo, PricingPolicy::SoloOnly).size() == 1);
    CHECK(filter_by_policy(only_pooled, PricingPolicy::ForcedPooling).size() == 1);
}

TEST_CASE("deterministic choice is the effective-utility argmax") {
    DriverProfile d;
    Rng rng(1);
    const std::vector<PricedRide> priced{fake_priced(0, 3.0), fake_priced(1, 5.0),
                                         fake_priced(2, 4.2)};
    CHECK(choose_ride(priced, d, false, rng) == 1);

    // multiplier arithmetic: solo 3.0 at factor 1 vs pooled 5.0 at factor 0.5
    PricedRide solo = fake_priced(0, 3.0);
    PricedRide pooled = fake_priced(1, 2.5);
    CHECK(choose_ride(std::vector<PricedRide>{solo, pooled}, d, false, rng) == 0);

    // ties break on the smaller candidate id
    const std::vector<PricedRide> tied{fake_priced(4, 1.0), fake_priced(2, 1.0)};
    CHECK(choose_ride(tied, d, false, rng) == 1);

    // scaling every utility keeps the winner
    const std::vector<PricedRide> scaled{fake_priced(0, 30.0), fake_priced(1, 50.0),
                                         fake_priced(2, 42.0)};
    CHECK(choose_ride(scaled, d, false, rng) == 1);

    CHECK_THROWS_AS(choose_ride(std::vector<PricedRide>{}, d, false, rng),
                    std::invalid_argument);
}

TEST_CASE("decline only when allowed and everything is unprofitable") {
    DriverProfile d;
    Rng rng(2);
    const std::vector<PricedRide> losses{fake_priced(0, -1.0), fake_priced(1, -0.5)};
    CHECK(choose_ride(losses, d, true, rng) == std::nullopt);
    CHECK(choose_ride(losses, d, false, rng) == 1);
    const std::vector<PricedRide> mixed{fake_priced(0, -1.0), fake_priced(1, 0.5)};
    CHECK(choose_ride(mixed, d, true, rng) == 1);
}

TEST_CASE("logit choice") {
    DriverProfile d;
    d.choice_mode = ChoiceMode::Mnl;
    d.mnl_scale = 1.0;

    SUBCASE("equal utilities split evenly") {
        Rng rng(3);
        const std::vector<PricedRide> tied{fake_priced(0, 2.0), fake_priced(1, 2.0)};
        int first = 0;
        const int draws = 10000;
        for (int i = 0; i < draws; ++i)
            first += choose_ride(tied, d, false, rng) == 0;
        CHECK(std::abs(first / static_cast<double>(draws) - 0.5) < 0.02);
    }

    SUBCASE("large scale recovers the argmax") {
        DriverProfile sharp = d;
        sharp.mnl_scale = 1000.0;
        Rng rng(4);
        const std::vector<PricedRide> priced{fake_priced(0, 3.0), fake_priced(1, 5.0),
                                             fake_priced(2, 4.2)};
        int argmax_hits = 0;
        for (int i = 0; i < 1000; ++i)
            argmax_hits += choose_ride(priced, sharp, false, rng) == 1;
        CHECK(argmax_hits >= 999);
    }

    SUBCASE("adding a constant to every utility changes nothing") {
        const std::vector<PricedRide> a{fake_priced(0, 1.0), fake_priced(1, 2.0),
                                        fake_priced(2, 0.5)};
        const std::vector<PricedRide> b{fake_priced(0, 11.0), fake_priced(1, 12.0),
                                        fake_priced(2, 10.5)};
        Rng rng_a(5), rng_b(5);
        for (int i = 0; i < 2000; ++i)
            CHECK(choose_ride(a, d, false, rng_a) == choose_ride(b, d, false, rng_b));
    }
}

TEST_CASE("policy names round-trip") {
    for (PricingPolicy p :
         {PricingPolicy::SoloOnly, PricingPolicy::ForcedPooling, PricingPolicy::ProfitMax})
        CHECK(parse_policy(policy_name(p)) == p);
    CHECK(parse_policy("surge") == std::nullopt);
}
