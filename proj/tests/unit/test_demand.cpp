#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "replenish/demand.hpp"
#include "replenish/scenario.hpp"

using namespace replenish;

namespace {

DemandModel stationary(double mean, double cv, NoiseKind noise = NoiseKind::gaussian) {
    DemandModel m;
    m.kind = DemandKind::stationary;
    m.base_mean = mean;
    m.cv = cv;
    m.noise = noise;
    return m;
}

OrderDecision order_of(Units q, Period placed, int lead) {
    OrderDecision o;
    o.sku_id = "A";
    o.supplier_id = "S";
    o.quantity = q;
    o.placed_at = placed;
    o.promised_arrival = placed + lead;
    return o;
}

SupplierOffer offer_with(double reliability) {
    SupplierOffer o;
    o.supplier_id = "S";
    o.sku_id = "A";
    o.unit_cost = 1.0;
    o.lead_time = 3;
    o.reliability = reliability;
    return o;
}

}  // namespace

TEST(Demand, ZeroNoiseIsConstant) {
    const auto trace = generate_trace(stationary(10, 0), 50, Rng::stream(1, "d"));
    for (Units d : trace) EXPECT_EQ(d, 10);
}

TEST(Demand, SeasonalTroughClampsToZero) {
    DemandModel m = stationary(10, 0);
    m.kind = DemandKind::seasonal;
    m.season_amplitude = 1.0;
    m.season_period = 4;
    // sin(2 pi 3 / 4) = -1.
    EXPECT_NEAR(m.mean_at(3), 0.0, 1e-9);
    const auto trace = generate_trace(m, 8, Rng::stream(1, "d"));
    EXPECT_EQ(trace[3], 0);
    EXPECT_EQ(trace[7], 0);
    EXPECT_EQ(trace[1], 20);
}

TEST(Demand, TrendingMeanGrowsLinearly) {
    DemandModel m = stationary(10, 0);
    m.kind = DemandKind::trending;
    m.trend_slope = 0.5;
    EXPECT_DOUBLE_EQ(m.mean_at(0), 10.0);
    EXPECT_DOUBLE_EQ(m.mean_at(20), 20.0);
}

TEST(Demand, SampleMeanWithinThreeStandardErrors) {
    const int n = 10000;
    for (NoiseKind noise : {NoiseKind::gaussian, NoiseKind::poisson}) {
        const auto trace = generate_trace(stationary(20, 0.25, noise), n, Rng::stream(42, "stat"));
        double sum = 0.0;
        for (Units d : trace) sum += static_cast<double>(d);
        // Gaussian sd = cv mu; gamma-Poisson sd = sqrt(mu + (cv mu)^2).
        const double sd = noise == NoiseKind::gaussian ? 5.0 : std::sqrt(20.0 + 25.0);
        EXPECT_NEAR(sum / n, 20.0, 3.0 * sd / std::sqrt(double(n))) << to_string(noise);
    }
}

TEST(Demand, PoissonVarianceMatchesMixture) {
    const int n = 20000;
    const auto trace = generate_trace(stationary(30, 0.3, NoiseKind::poisson), n, Rng::stream(5, "var"));
    double s = 0.0, ss = 0.0;
    for (Units d : trace) {
        s += double(d);
        ss += double(d) * double(d);
    }
    const double mean = s / n;
    const double var = ss / n - mean * mean;
    EXPECT_NEAR(var, 30.0 + 81.0, 0.1 * 111.0);
}

TEST(Demand, SameStreamSameTrace) {
    const auto a = generate_trace(stationary(15, 0.4), 100, Rng::stream(9, "demand/A"));
    const auto b = generate_trace(stationary(15, 0.4), 100, Rng::stream(9, "demand/A"));
    EXPECT_EQ(a, b);
}

TEST(Demand, InvalidModelRejected) {
    EXPECT_THROW(generate_trace(stationary(-1, 0), 10, Rng::stream(1, "x")), Error);
    EXPECT_THROW(generate_trace(stationary(10, -0.1), 10, Rng::stream(1, "x")), Error);
}

TEST(Disruption, PerfectReliabilityAlwaysOnTimeInFull) {
    DisruptionModel d;
    d.enabled = true;
    d.delay_probability = 1.0;
    d.shortage_probability = 1.0;
    for (int i = 0; i < 200; ++i) {
        const auto r = perturb_order(order_of(40, 10, 3), offer_with(1.0), d, Rng::stream(i, "o"));
        EXPECT_EQ(r.arrival_period, 13);
        EXPECT_EQ(r.delivered, 40);
        EXPECT_FALSE(r.delayed || r.short_shipped);
    }
}

TEST(Disruption, ShortageDeliversFillFraction) {
    DisruptionModel d;
    d.enabled = true;
    d.shortage_probability = 1.0;
    d.fill_fraction = 0.5;
    const auto r = perturb_order(order_of(40, 10, 3), offer_with(0.0), d, Rng::stream(1, "o"));
    EXPECT_TRUE(r.short_shipped);
    EXPECT_EQ(r.delivered, 20);
    EXPECT_EQ(r.arrival_period, 13);
}

TEST(Disruption, DelayAddsExtraPeriods) {
    DisruptionModel d;
    d.enabled = true;
    d.delay_probability = 1.0;
    d.delay_extra_periods = 2;
    const auto r = perturb_order(order_of(40, 10, 3), offer_with(0.0), d, Rng::stream(1, "o"));
    EXPECT_TRUE(r.delayed);
    EXPECT_EQ(r.arrival_period, 15);
    EXPECT_EQ(r.delivered, 40);
}

TEST(Disruption, DelayFrequencyScalesWithUnreliability) {
    DisruptionModel d;
    d.enabled = true;
    d.delay_probability = 0.5;
    const int n = 20000;
    int delayed = 0;
    for (int i = 0; i < n; ++i)
        delayed += perturb_order(order_of(10, 0, 1), offer_with(0.6), d, Rng::stream(i, "freq")).delayed;
    // p = 0.5 * 0.4.
    EXPECT_NEAR(double(delayed) / n, 0.2, 4.0 * std::sqrt(0.2 * 0.8 / n));
}

TEST(Disruption, DisabledModelIsIdentity) {
    DisruptionModel d;
    d.delay_probability = 1.0;
    const auto r = perturb_order(order_of(7, 2, 1), offer_with(0.0), d, Rng::stream(1, "o"));
    EXPECT_EQ(r.arrival_period, 3);
    EXPECT_EQ(r.delivered, 7);
    DemandTrace trace{1, 2, 3};
    d.shock_probability = 1.0;
    d.shock_multiplier = 2.0;
    apply_demand_shocks(trace, d, Rng::stream(1, "s"));
    EXPECT_EQ(trace, (DemandTrace{1, 2, 3}));
    d.enabled = true;
    apply_demand_shocks(trace, d, Rng::stream(1, "s"));
    EXPECT_EQ(trace, (DemandTrace{2, 4, 6}));
}

TEST(ScaleScenario, IdentityAndRounding) {
    Scenario s;
    SkuSpec k;
    k.sku.id = "A";
    k.demand = stationary(20, 0.1);
    s.skus.push_back(k);
    SupplierOffer o = offer_with(1.0);
    o.lead_time = 3;
    s.offers.push_back(o);

    const Scenario same = scale_scenario(s, 1.0, 1.0);
    EXPECT_EQ(canonical_form(same), canonical_form(s));

    const Scenario scaled = scale_scenario(s, 1.2, 1.2);
    EXPECT_DOUBLE_EQ(scaled.skus[0].demand.base_mean, 24.0);
    EXPECT_EQ(scaled.offers[0].lead_time, 4);  // 3.6 -> 4
    EXPECT_EQ(scale_scenario(s, 1.0, 0.8).offers[0].lead_time, 2);  // 2.4 -> 2
    EXPECT_EQ(scale_scenario(s, 1.0, 0.5).offers[0].lead_time, 2);  // 1.5 -> 2

    EXPECT_THROW(scale_scenario(s, 0.4, 1.0), Error);
    EXPECT_THROW(scale_scenario(s, 1.0, 1.6), Error);
}
