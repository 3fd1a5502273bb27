#include <gtest/gtest.h>

#include "replenish/core.hpp"
#include "replenish/rng.hpp"

using namespace replenish;

namespace {

Sku durable(double h = 1.0, double p = 3.0) {
    Sku s;
    s.id = "A";
    s.category = Category::other;
    s.holding_cost = h;
    s.stockout_penalty = p;
    return s;
}

}  // namespace

TEST(Money, RoundsToCentsAndSumsExactly) {
    EXPECT_EQ(Money::from_currency(0.1).cents(), 10);
    Money sum;
    for (int i = 0; i < 1000; ++i) sum += Money::from_currency(0.01);
    EXPECT_EQ(sum, Money::from_cents(1000));
    EXPECT_EQ(Money::from_cents(-105).to_string(), "-1.05");
    EXPECT_EQ(Money::from_cents(7).to_string(), "0.07");
}

TEST(Rng, StreamsAreReproducibleAndLabelled) {
    Rng a = Rng::stream(7, "demand/A");
    Rng b = Rng::stream(7, "demand/A");
    Rng c = Rng::stream(7, "demand/B");
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a();
        EXPECT_EQ(x, b());
        any_diff |= x != c();
    }
    EXPECT_TRUE(any_diff);
}

TEST(Rng, UniformMomentsAndRange) {
    Rng r = Rng::stream(1, "u");
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, PoissonAndGammaMeans) {
    Rng r = Rng::stream(3, "p");
    const int n = 20000;
    double ps = 0.0, gs = 0.0;
    for (int i = 0; i < n; ++i) {
        ps += static_cast<double>(r.poisson(40.0));
        gs += r.gamma(2.5);
    }
    EXPECT_NEAR(ps / n, 40.0, 4.0 * std::sqrt(40.0 / n));
    EXPECT_NEAR(gs / n, 2.5, 4.0 * std::sqrt(2.5 / n));
}

TEST(Ledger, FulfillClampsToStock) {
    SkuLedger l(durable());
    l.add_opening_stock({5, 0, 2.0});
    const auto r = l.fulfill_demand(8);
    EXPECT_EQ(r.sales, 5);
    EXPECT_EQ(r.stockout_units, 3);
    EXPECT_EQ(l.on_hand(), 0);
    l.accrue_period_costs();
    EXPECT_EQ(l.accounts().stockout, Money::from_currency(9.0));
}

TEST(Ledger, ZeroDemandLeavesLedgerUnchanged) {
    SkuLedger l(durable());
    l.add_opening_stock({10, 0, 2.0});
    const auto r = l.fulfill_demand(0);
    EXPECT_EQ(r.sales, 0);
    EXPECT_EQ(r.stockout_units, 0);
    EXPECT_EQ(l.on_hand(), 10);
    ASSERT_EQ(l.batches().size(), 1u);
}

TEST(Ledger, FifoConsumesOldestBatchFirst) {
    SkuLedger l(durable());
    l.add_opening_stock({3, 2, 1.0});
    l.add_opening_stock({4, 0, 1.5});
    l.fulfill_demand(4);
    ASSERT_EQ(l.batches().size(), 1u);
    EXPECT_EQ(l.batches()[0].quantity, 3);
    EXPECT_EQ(l.batches()[0].age, 0);
    // COGS: 3 units at 1.0 and 1 unit at 1.5.
    EXPECT_EQ(l.cogs(), Money::from_currency(4.5));
}

TEST(Ledger, DurablesNeverSpoil) {
    SkuLedger l(durable());
    l.add_opening_stock({100, 0, 1.0});
    for (int t = 0; t < 50; ++t) EXPECT_EQ(l.age_and_spoil(), 0);
    EXPECT_EQ(l.on_hand(), 100);
}

TEST(Ledger, FractionalDecayFloorsAndChargesPurchasePrice) {
    Sku s = durable();
    s.decay_fraction = 0.1;
    SkuLedger l(s);
    l.add_opening_stock({100, 0, 2.0});
    EXPECT_EQ(l.age_and_spoil(), 10);
    EXPECT_EQ(l.on_hand(), 90);
    l.accrue_period_costs();
    EXPECT_EQ(l.accounts().spoilage, Money::from_currency(20.0));
    // floor(0.1 * 90) = 9.
    EXPECT_EQ(l.age_and_spoil(), 9);
}

TEST(Ledger, ShelfLifeExpiresWholeBatch) {
    Sku s = durable();
    s.shelf_life = 3;
    SkuLedger l(s);
    l.add_opening_stock({12, 3, 1.0});
    l.add_opening_stock({5, 0, 1.0});
    EXPECT_EQ(l.age_and_spoil(), 12);
    ASSERT_EQ(l.batches().size(), 1u);
    EXPECT_EQ(l.batches()[0].age, 1);
}

TEST(Ledger, ReceivesOnlyDueShipmentsAsSeparateBatches) {
    SkuLedger l(durable());
    l.schedule_shipment({5, 30, 2.0}, Money::from_currency(60.0));
    EXPECT_EQ(l.receive_shipments(4), 0);
    EXPECT_EQ(l.pipeline_quantity(), 30);
    EXPECT_EQ(l.receive_shipments(5), 30);
    EXPECT_EQ(l.on_hand(), 30);
    EXPECT_TRUE(l.pipeline().empty());

    SkuLedger m(durable());
    m.schedule_shipment({6, 30, 2.0}, Money{});
    m.schedule_shipment({6, 10, 2.5}, Money{});
    EXPECT_EQ(m.receive_shipments(5), 0);
    EXPECT_EQ(m.receive_shipments(6), 40);
    EXPECT_EQ(m.batches().size(), 2u);
}

TEST(Ledger, HoldingCostOnEndOfPeriodStock) {
    SkuLedger l(durable(1.0));
    l.add_opening_stock({40, 0, 1.0});
    EXPECT_EQ(l.accrue_period_costs(), Money::from_currency(40.0));
    SkuLedger empty(durable(1.0));
    EXPECT_EQ(empty.accrue_period_costs(), Money{});
}

TEST(Ledger, OnePeriodCostBreakdown) {
    // purchase 100, holding 40, stockout 27, spoilage 6 -> 173.
    Sku s = durable(1.0, 9.0);
    s.decay_fraction = 0.05;
    SkuLedger m(s);
    m.add_opening_stock({40, 0, 3.0});
    m.add_opening_stock({3, 0, 0.0});
    m.schedule_shipment({9, 10, 10.0}, Money::from_currency(100.0));
    m.fulfill_demand(46);  // 43 sold, 3 lost at 9 -> 27
    // Stock can only sit beside a stockout if it lands after the sale, so
    // book the closing stock directly.
    m.add_opening_stock({42, 0, 3.0});
    const Units spoiled = m.age_and_spoil();  // floor(0.05 * 42) = 2 at 3.0 -> 6
    EXPECT_EQ(spoiled, 2);
    // 40 left at h = 1 -> 40
    EXPECT_EQ(m.accrue_period_costs(), Money::from_currency(173.0));
    EXPECT_EQ(m.accounts().purchase, Money::from_currency(100.0));
    EXPECT_EQ(m.accounts().holding, Money::from_currency(40.0));
    EXPECT_EQ(m.accounts().stockout, Money::from_currency(27.0));
    EXPECT_EQ(m.accounts().spoilage, Money::from_currency(6.0));
}

TEST(Ledger, ConservationUnderRandomOperations) {
    Sku s = durable(0.3, 2.0);
    s.decay_fraction = 0.07;
    s.shelf_life = 6;
    SkuLedger l(s);
    Rng r = Rng::stream(11, "ledger-property");
    Units expected_on_hand = 0;
    for (Period t = 0; t < 400; ++t) {
        if (r.bernoulli(0.3)) l.schedule_shipment({t + 1 + static_cast<int>(r() % 4), static_cast<Units>(1 + r() % 60), 1.0}, Money::from_cents(100));
        const Units start = l.on_hand();
        const Units received = l.receive_shipments(t);
        const Units demand = static_cast<Units>(r() % 30);
        const auto f = l.fulfill_demand(demand);
        const Units spoiled = l.age_and_spoil();
        const CostAccounts before = l.accounts();
        const Money period = l.accrue_period_costs();
        ASSERT_EQ(l.on_hand(), start + received - f.sales - spoiled);
        ASSERT_EQ(f.sales + f.stockout_units, demand);
        ASSERT_GE(l.on_hand(), 0);
        ASSERT_EQ(l.accounts().total() - before.total(), period);
        expected_on_hand = l.on_hand();
        Units sum = 0;
        for (const auto& b : l.batches()) {
            ASSERT_GT(b.quantity, 0);
            ASSERT_LE(b.age, 6);
            sum += b.quantity;
        }
        ASSERT_EQ(sum, expected_on_hand);
    }
    const auto& c = l.counters();
    EXPECT_EQ(c.sales + c.stockout_units, c.demand);
}

TEST(Validation, RejectsOutOfRangeFields) {
    Sku s = durable();
    s.decay_fraction = 1.5;
    EXPECT_THROW(s.validate(), Error);
    s = durable(-1.0);
    EXPECT_THROW(s.validate(), Error);
    SupplierOffer o{"S", "A", 1.0, 1, 0, std::nullopt, 1.2, 0.0, 0.0};
    EXPECT_THROW(o.validate(), Error);
    o.reliability = 1.0;
    o.capacity_per_order = 5;
    o.moq = 10;
    EXPECT_THROW(o.validate(), Error);
}
