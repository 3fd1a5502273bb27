#include <gtest/gtest.h>

#include <algorithm>

#include "replenish/coordination.hpp"
#include "replenish/rng.hpp"

using namespace replenish;

namespace {

// Unit price 1 and no shipping, so landed cost equals quantity.
OrderDecision order(std::string sku, Units cost, double density) {
    OrderDecision o;
    o.sku_id = std::move(sku);
    o.supplier_id = "S";
    o.quantity = cost;
    o.negotiated_unit_price = 1.0;
    o.list_unit_price = 1.0;
    o.criticality = density * static_cast<double>(cost);
    return o;
}

double value_of(const std::vector<OrderDecision>& orders) {
    double v = 0.0;
    for (const auto& o : orders) v += o.criticality;
    return v;
}

// Exact 0/1 knapsack by subset enumeration.
double best_value(const std::vector<OrderDecision>& orders, double budget) {
    const std::size_t n = orders.size();
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double cost = 0.0, value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                cost += orders[i].landed_cost();
                value += orders[i].criticality;
            }
        }
        if (cost <= budget + 1e-9) best = std::max(best, value);
    }
    return best;
}

}  // namespace

TEST(Arbitrate, UnboundedFundsEverythingInOrder) {
    std::vector<OrderDecision> c{order("B", 10, 1), order("A", 20, 5), order("C", 5, 2)};
    const auto r = arbitrate(c, {}, 0);
    ASSERT_EQ(r.funded.size(), 3u);
    EXPECT_TRUE(r.deferred.empty());
    EXPECT_EQ(r.funded[0].sku_id, "B");
    EXPECT_EQ(r.funded[2].sku_id, "C");
}

TEST(Arbitrate, ZeroBudgetDefersAll) {
    std::vector<OrderDecision> c{order("A", 10, 1), order("B", 20, 5)};
    GlobalConstraints g;
    g.budget_per_period = Money{};
    const auto r = arbitrate(c, g, 0);
    EXPECT_TRUE(r.funded.empty());
    EXPECT_EQ(r.deferred.size(), 2u);
}

TEST(Arbitrate, GreedySkipsOrderThatWouldBreakBudget) {
    std::vector<OrderDecision> c{order("Z", 40, 1), order("Y", 50, 2), order("X", 60, 3)};
    GlobalConstraints g;
    g.budget_per_period = Money::from_currency(100);
    const auto r = arbitrate(c, g, 0);
    ASSERT_EQ(r.funded.size(), 2u);
    EXPECT_EQ(r.funded[0].sku_id, "Z");
    EXPECT_EQ(r.funded[1].sku_id, "X");
    ASSERT_EQ(r.deferred.size(), 1u);
    EXPECT_EQ(r.deferred[0].sku_id, "Y");
}

TEST(Arbitrate, CapacityAndOrderLimit) {
    std::vector<OrderDecision> c{order("A", 30, 3), order("B", 30, 2), order("C", 10, 1)};
    GlobalConstraints cap;
    cap.warehouse_capacity = 100;
    const auto r = arbitrate(c, cap, 55);  // room for 45 units
    ASSERT_EQ(r.funded.size(), 2u);
    EXPECT_EQ(r.funded[0].sku_id, "A");
    EXPECT_EQ(r.funded[1].sku_id, "C");

    GlobalConstraints limit;
    limit.max_orders_per_period = 1;
    const auto l = arbitrate(c, limit, 0);
    ASSERT_EQ(l.funded.size(), 1u);
    EXPECT_EQ(l.funded[0].sku_id, "A");
}

TEST(Arbitrate, InvariantsOnRandomInstances) {
    Rng r = Rng::stream(17, "arbitrate");
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<OrderDecision> c;
        const int n = 1 + static_cast<int>(r() % 12);
        for (int i = 0; i < n; ++i)
            c.push_back(order("S" + std::to_string(i), 1 + static_cast<Units>(r() % 80), 0.1 + 5 * r.uniform()));
        GlobalConstraints g;
        g.budget_per_period = Money::from_currency(50 + 200 * r.uniform());
        g.warehouse_capacity = 200 + static_cast<Units>(r() % 300);
        const Units projected = static_cast<Units>(r() % 150);
        const auto a = arbitrate(c, g, projected);
        ASSERT_EQ(a.funded.size() + a.deferred.size(), c.size());
        Money spent;
        Units qty = 0;
        for (const auto& o : a.funded) {
            spent += Money::from_currency(o.landed_cost());
            qty += o.quantity;
        }
        EXPECT_LE(spent, *g.budget_per_period);
        EXPECT_LE(projected + qty, *g.warehouse_capacity);
    }
}

// Random instance: up to 12 orders, budget 30-70% of their total cost.
struct Instance {
    std::vector<OrderDecision> orders;
    double budget = 0.0;
    double largest = 0.0;
};

Instance random_instance(Rng& r) {
    Instance in;
    const int n = 4 + static_cast<int>(r() % 9);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        in.orders.push_back(order("S" + std::to_string(i), 5 + static_cast<Units>(r() % 60), 0.5 + 4 * r.uniform()));
        total += in.orders.back().landed_cost();
        in.largest = std::max(in.largest, in.orders.back().landed_cost());
    }
    in.budget = std::floor(total * (0.3 + 0.4 * r.uniform()));
    return in;
}

struct Outcome {
    double greedy = 0.0;
    double exact = 0.0;
    double largest_value = 0.0;
};

Outcome solve(const Instance& in) {
    GlobalConstraints g;
    g.budget_per_period = Money::from_currency(in.budget);
    Outcome o;
    o.greedy = value_of(arbitrate(in.orders, g, 0).funded);
    o.exact = best_value(in.orders, in.budget);
    for (const auto& x : in.orders) o.largest_value = std::max(o.largest_value, x.criticality);
    return o;
}

TEST(Arbitrate, GreedyLosesAtMostOneOrderOfValue) {
    // Density order: the funded prefix plus the first order that does not fit
    // bounds the fractional optimum, so greedy >= exact - largest value.
    Rng r = Rng::stream(23, "knapsack");
    for (int i = 0; i < 300; ++i) {
        const auto o = solve(random_instance(r));
        ASSERT_GE(o.greedy, o.exact - o.largest_value - 1e-9) << i;
    }
}

TEST(Arbitrate, GreedyAverageGapOnUnrestrictedInstances) {
    // A few large orders can leave the greedy far from optimal on a single
    // instance (the bound above is all that holds per instance), so the 10%
    // target applies to the average.
    Rng r = Rng::stream(29, "knapsack-any");
    double sum = 0.0;
    const int n = 300;
    for (int i = 0; i < n; ++i) {
        const auto o = solve(random_instance(r));
        sum += 1.0 - o.greedy / o.exact;
    }
    EXPECT_LE(sum / n, 0.10);
}
