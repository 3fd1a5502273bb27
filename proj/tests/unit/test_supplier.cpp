#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "replenish/supplier.hpp"

using namespace replenish;

namespace {

SupplierOffer offer(std::string id, double cost, int lead, double rel, double ship = 0.0, Units moq = 0,
                    std::optional<Units> cap = std::nullopt) {
    SupplierOffer o;
    o.supplier_id = std::move(id);
    o.sku_id = "A";
    o.unit_cost = cost;
    o.lead_time = lead;
    o.reliability = rel;
    o.fixed_shipping = ship;
    o.moq = moq;
    o.capacity_per_order = cap;
    return o;
}

ReorderProposal need(Units q) { return {"A", q, 5, 10.0, Rationale::order_up_to, false}; }

std::vector<CandidateOffer> candidates(const std::vector<SupplierOffer>& offers) {
    std::vector<CandidateOffer> out;
    for (const auto& o : offers) out.push_back({&o, o.reliability});
    return out;
}

}  // namespace

TEST(LandedCost, Arithmetic) {
    EXPECT_DOUBLE_EQ(landed_cost(offer("S", 2, 1, 1, 10), 50, 2.0), 110.0);
    EXPECT_DOUBLE_EQ(landed_cost(offer("S", 2, 1, 1, 0), 50, 1.5), 75.0);
    EXPECT_THROW(landed_cost(offer("S", 2, 1, 1, 0, 60), 50, 2.0), Error);
    EXPECT_EQ(purchase_charge(1.25, 3, 0.5), Money::from_cents(425));
}

TEST(Score, WorkedExample) {
    // A: landed 100, lead 2, reliability 0.9. B: landed 120, lead 1, reliability 0.95.
    const auto a = offer("A", 2.0, 2, 0.9);
    const auto b = offer("B", 2.4, 1, 0.95);
    const SupplierScoreWeights w{0.5, 0.3, 0.2};
    const ScoreNormalizers norm{120.0, 2.0};
    const double sa = score_offer(a, 50, a.reliability, w, norm);
    const double sb = score_offer(b, 50, b.reliability, w, norm);
    EXPECT_NEAR(sa, 0.5 * 100.0 / 120.0 + 0.3 + 0.2 * 0.1, 1e-12);
    EXPECT_NEAR(sa, 0.7367, 1e-4);
    EXPECT_NEAR(sb, 0.66, 1e-12);

    const std::vector<SupplierOffer> both{a, b};
    const auto ranked = rank_offers(candidates(both), 50, w);
    EXPECT_EQ(ranked.front().candidate.offer->supplier_id, "B");
}

TEST(Score, DominantOfferWinsForAnyWeights) {
    const std::vector<SupplierOffer> offers{offer("worse", 3.0, 5, 0.7), offer("better", 2.0, 2, 0.95)};
    for (double wc : {0.1, 0.5, 0.9}) {
        for (double wl : {0.0, (1.0 - wc) / 2}) {
            const SupplierScoreWeights w{wc, wl, 1.0 - wc - wl};
            EXPECT_EQ(rank_offers(candidates(offers), 40, w).front().candidate.offer->supplier_id, "better");
        }
    }
}

TEST(Score, RankingInvariantToCostScale) {
    const std::vector<SupplierOffer> base{offer("x", 2.0, 3, 0.9, 5), offer("y", 2.2, 1, 0.8, 1),
                                          offer("z", 1.9, 6, 0.99, 20)};
    std::vector<SupplierOffer> scaled = base;
    for (auto& o : scaled) {
        o.unit_cost *= 7.5;
        o.fixed_shipping *= 7.5;
    }
    const SupplierScoreWeights w{0.5, 0.2, 0.3};
    const auto r1 = rank_offers(candidates(base), 30, w);
    const auto r2 = rank_offers(candidates(scaled), 30, w);
    for (std::size_t i = 0; i < r1.size(); ++i)
        EXPECT_EQ(r1[i].candidate.offer->supplier_id, r2[i].candidate.offer->supplier_id);
}

TEST(Allocate, SingleFeasibleSupplierIsUsed) {
    const std::vector<SupplierOffer> only{offer("S", 9.0, 9, 0.1, 100)};
    const auto a = allocate(need(30), candidates(only), {}, 0);
    ASSERT_EQ(a.orders.size(), 1u);
    EXPECT_EQ(a.orders[0].quantity, 30);
    EXPECT_EQ(a.orders[0].promised_arrival, 9);
}

TEST(Allocate, GreedySplitAcrossCapacities) {
    const std::vector<SupplierOffer> offers{offer("B", 2.0, 2, 0.9, 0, 0, 60), offer("A", 1.0, 1, 1.0, 0, 0, 60)};
    const auto a = allocate(need(100), candidates(offers), {}, 3);
    ASSERT_EQ(a.orders.size(), 2u);
    EXPECT_EQ(a.orders[0].supplier_id, "A");
    EXPECT_EQ(a.orders[0].quantity, 60);
    EXPECT_EQ(a.orders[1].supplier_id, "B");
    EXPECT_EQ(a.orders[1].quantity, 40);
    EXPECT_EQ(a.shortfall, 0);
    EXPECT_DOUBLE_EQ(a.orders[0].criticality + a.orders[1].criticality, 10.0);
}

TEST(Allocate, MoqRoundUpTolerance) {
    const std::vector<SupplierOffer> moq25{offer("S", 1.0, 1, 1.0, 0, 25)};
    const auto small = allocate(need(10), candidates(moq25), {}, 0);
    EXPECT_TRUE(small.unfilled);
    EXPECT_EQ(small.shortfall, 10);
    const auto near = allocate(need(20), candidates(moq25), {}, 0);
    ASSERT_EQ(near.orders.size(), 1u);
    EXPECT_EQ(near.orders[0].quantity, 25);
    EXPECT_TRUE(allocate(need(19), candidates(moq25), {}, 0).unfilled);
}

TEST(Allocate, OrdersRespectMoqAndCapacityAndIgnoreListOrder) {
    std::vector<SupplierOffer> offers{offer("a", 1.0, 2, 0.9, 3, 10, 40), offer("b", 1.1, 1, 0.95, 2, 5, 25),
                                      offer("c", 0.9, 4, 0.8, 8, 30, 90)};
    const SupplierScoreWeights w{0.5, 0.2, 0.3};
    for (Units q : {1, 7, 12, 26, 55, 80, 200}) {
        const auto ref = allocate(need(q), candidates(offers), w, 0);
        for (const auto& o : ref.orders) {
            const auto& src = *std::find_if(offers.begin(), offers.end(),
                                            [&](const SupplierOffer& x) { return x.supplier_id == o.supplier_id; });
            EXPECT_GE(o.quantity, src.moq);
            EXPECT_LE(o.quantity, src.capacity());
        }
        std::vector<SupplierOffer> perm = offers;
        std::reverse(perm.begin(), perm.end());
        const auto other = allocate(need(q), candidates(perm), w, 0);
        ASSERT_EQ(other.orders.size(), ref.orders.size());
        for (std::size_t i = 0; i < ref.orders.size(); ++i) {
            EXPECT_EQ(other.orders[i].supplier_id, ref.orders[i].supplier_id);
            EXPECT_EQ(other.orders[i].quantity, ref.orders[i].quantity);
        }
    }
}

TEST(ReliabilityTracker, LearnedRateReplacesCatalogueAfterTenOrders) {
    const auto o = offer("S", 1.0, 1, 0.9);
    ReliabilityTracker t;
    for (int i = 0; i < 9; ++i) t.record(o, false);
    EXPECT_DOUBLE_EQ(t.effective(o), 0.9);
    t.record(o, false);
    EXPECT_EQ(t.observations(o), 10);
    EXPECT_NEAR(t.effective(o), 0.9 * std::pow(0.9, 10), 1e-12);
    for (int i = 0; i < 200; ++i) t.record(o, true);
    EXPECT_NEAR(t.effective(o), 1.0, 1e-6);
}
