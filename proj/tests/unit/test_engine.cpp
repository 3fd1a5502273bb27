#include <gtest/gtest.h>

#include <sstream>

#include "replenish/engine.hpp"
#include "replenish/report.hpp"
#include "replenish/scenario_io.hpp"

using namespace replenish;

namespace {

Scenario micro(double mean, int horizon) {
    Scenario s;
    s.name = "micro";
    s.horizon = horizon;
    s.warmup = 0;
    SkuSpec k;
    k.sku.id = "A";
    k.sku.holding_cost = 0.5;
    k.sku.stockout_penalty = 4.0;
    k.sku.unit_margin = 1.0;
    k.demand.base_mean = mean;
    k.initial_stock = 5;
    s.skus.push_back(k);
    SupplierOffer o;
    o.supplier_id = "S";
    o.sku_id = "A";
    o.unit_cost = 2.0;
    o.lead_time = 1;
    o.fixed_shipping = 1.0;
    s.offers.push_back(o);
    s.policy.rule80_cover = 2.0;
    return s;
}

const Scenario& b1() {
    static const Scenario s = parse_scenario(std::filesystem::path(REPLENISH_SCENARIO_DIR) / "B1.yaml");
    return s;
}

std::string serialize(const RunReport& r) {
    std::ostringstream out;
    write_metrics_csv(out, r);
    write_timeseries_csv(out, r);
    write_orders_csv(out, r);
    write_summary(out, r);
    return out.str();
}

}  // namespace

TEST(Engine, HandTracedThreePeriodRun) {
    // Demand [5, 5, 5], lead time 1, rule80 with a reference level of 10.
    // t0: sell the 5 opening units, stock 0 <= 2, order 10 (2 * 10 + 1 = 21).
    // t1: receive 10, sell 5, hold 5 at 0.5 = 2.5; 5 > 2, no order.
    // t2: sell 5, stock 0, order 10 again: 21.
    const auto r = run_episode(micro(5, 3), PolicyKind::rule80, 1);
    ASSERT_EQ(r.records.size(), 3u);
    const Units start[] = {5, 0, 5}, received[] = {0, 10, 0}, end[] = {0, 5, 0}, pipe[] = {10, 0, 10};
    const double purchase[] = {21, 0, 21}, holding[] = {0, 2.5, 0}, value[] = {0, 10, 0};
    for (int t = 0; t < 3; ++t) {
        const auto& x = r.records[static_cast<std::size_t>(t)];
        SCOPED_TRACE(t);
        EXPECT_EQ(x.on_hand_start, start[t]);
        EXPECT_EQ(x.received, received[t]);
        EXPECT_EQ(x.demand, 5);
        EXPECT_EQ(x.sales, 5);
        EXPECT_EQ(x.stockout_units, 0);
        EXPECT_EQ(x.on_hand_end, end[t]);
        EXPECT_EQ(x.pipeline_end, pipe[t]);
        EXPECT_EQ(x.costs.purchase, Money::from_currency(purchase[t]));
        EXPECT_EQ(x.costs.holding, Money::from_currency(holding[t]));
        EXPECT_EQ(x.costs.stockout, Money{});
        EXPECT_EQ(x.inventory_value, Money::from_currency(value[t]));
        EXPECT_EQ(x.cogs, Money::from_currency(10));
    }
    EXPECT_EQ(r.metrics.total_cost, Money::from_currency(44.5));
    EXPECT_DOUBLE_EQ(r.metrics.stockout_rate, 0.0);
    EXPECT_DOUBLE_EQ(r.metrics.fill_rate, 1.0);
    EXPECT_NEAR(r.metrics.avg_inventory_value, 10.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.metrics.inventory_turnover, 30.0 / (10.0 / 3.0), 1e-9);
    ASSERT_EQ(r.orders.size(), 2u);
    EXPECT_EQ(r.orders[0].placed_at, 0);
    EXPECT_EQ(r.orders[1].placed_at, 2);
    EXPECT_TRUE(accounting_violations(r).empty());
}

TEST(Engine, ZeroDemandOnlyCarriesOpeningStock) {
    for (auto policy : {PolicyKind::static_rop, PolicyKind::sQ, PolicyKind::newsvendor, PolicyKind::agentic,
                        PolicyKind::oracle}) {
        const auto r = run_episode(micro(0, 6), policy, 3);
        SCOPED_TRACE(to_string(policy));
        EXPECT_EQ(r.metrics.sales, 0);
        EXPECT_EQ(r.metrics.stockout_units, 0);
        EXPECT_EQ(r.metrics.costs.purchase, Money{});
        EXPECT_EQ(r.metrics.costs.holding, Money::from_currency(6 * 5 * 0.5));
        EXPECT_TRUE(r.orders.empty());
    }
}

TEST(Engine, SameSeedSameSerializedReport) {
    for (auto policy : {PolicyKind::agentic, PolicyKind::static_rop}) {
        const auto a = run_episode(b1(), policy, 7);
        const auto b = run_episode(b1(), policy, 7);
        EXPECT_EQ(serialize(a), serialize(b));
    }
    EXPECT_NE(serialize(run_episode(b1(), PolicyKind::agentic, 7)),
              serialize(run_episode(b1(), PolicyKind::agentic, 8)));
}

TEST(Engine, CommonRandomNumbersAcrossPolicies) {
    const auto a = run_episode(b1(), PolicyKind::agentic, 11);
    const auto b = run_episode(b1(), PolicyKind::rule80, 11);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        ASSERT_EQ(a.records[i].sku_id, b.records[i].sku_id);
        ASSERT_EQ(a.records[i].demand, b.records[i].demand);
    }
}

TEST(Engine, BooksBalanceForEveryPolicy) {
    for (auto policy : {PolicyKind::static_rop, PolicyKind::rule80, PolicyKind::sQ, PolicyKind::newsvendor,
                        PolicyKind::agentic, PolicyKind::oracle}) {
        const auto r = run_episode(b1(), policy, 5);
        const auto v = accounting_violations(r);
        EXPECT_TRUE(v.empty()) << to_string(policy) << ": " << (v.empty() ? "" : v.front());
        EXPECT_GE(r.metrics.fill_rate, 0.0);
        EXPECT_LE(r.metrics.fill_rate, 1.0);
        EXPECT_GE(r.metrics.inventory_turnover, 0.0);
    }
}

TEST(Engine, MetricsExcludeWarmup) {
    const auto r = run_episode(b1(), PolicyKind::newsvendor, 2);
    const Metrics all = compute_metrics(r.records, 0);
    const Metrics post = compute_metrics(r.records, b1().warmup);
    EXPECT_EQ(post.sku_periods, 20 * (91 - 28));
    EXPECT_EQ(all.sku_periods, 20 * 91);
    EXPECT_EQ(post.total_cost, r.metrics.total_cost);
    Money warm;
    for (const auto& x : r.records)
        if (x.period < b1().warmup) warm += x.costs.total();
    EXPECT_EQ(all.total_cost - warm, post.total_cost);
}

TEST(Engine, OracleHasNoStockoutsWithoutDisruptions) {
    Scenario s = b1();
    s.disruption.enabled = false;
    for (std::uint64_t seed : {1u, 2u}) {
        const auto r = run_episode(s, PolicyKind::oracle, seed);
        EXPECT_EQ(r.metrics.stockout_units, 0) << seed;
    }
}

TEST(Engine, InvalidScenarioFailsBeforeRunning) {
    Scenario s = micro(5, 3);
    s.warmup = 5;
    EXPECT_THROW(run_episode(s, PolicyKind::agentic, 1), ScenarioError);
}

TEST(Comparison, SinglePolicySingleSeedEqualsEpisode) {
    const auto report = run_comparison(b1(), {PolicyKind::sQ}, {4}, {}, 1);
    const auto direct = run_episode(b1(), PolicyKind::sQ, 4);
    ASSERT_EQ(report.variants.size(), 1u);
    const auto lhs = metric_table(report.variants[0].per_seed[0]);
    const auto rhs = metric_table(direct.metrics);
    ASSERT_EQ(lhs.size(), rhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_EQ(lhs[i].second, rhs[i].second) << lhs[i].first;
    for (const auto& s : report.variants[0].summary) EXPECT_EQ(s.std, 0.0);
}

TEST(Comparison, PairedDeltasAndThreadIndependence) {
    const std::vector<std::uint64_t> seeds{1, 2, 3};
    const auto one = run_comparison(b1(), {PolicyKind::static_rop, PolicyKind::agentic}, seeds, {}, 1);
    const auto many = run_comparison(b1(), {PolicyKind::static_rop, PolicyKind::agentic}, seeds, {}, 3);
    const auto d = one.paired_delta(1, "total_cost");
    ASSERT_EQ(d.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(d[i], one.variants[1].per_seed[i].total_cost.currency() -
                                   one.variants[0].per_seed[i].total_cost.currency());
        EXPECT_EQ(one.variants[1].per_seed[i].total_cost, many.variants[1].per_seed[i].total_cost);
    }
    double mean = 0.0;
    for (const auto& m : one.variants[1].per_seed) mean += m.total_cost.currency() / 3.0;
    for (const auto& s : one.variants[1].summary)
        if (s.metric == "total_cost") EXPECT_NEAR(s.mean, mean, 1e-6);
}

TEST(Sensitivity, IdentityCellAndGridShape) {
    const std::vector<std::uint64_t> seeds{1, 2};
    const auto rep = run_sensitivity(b1(), {0.8, 1.0, 1.2}, {0.8, 1.0, 1.2}, seeds, 1);
    ASSERT_EQ(rep.cells.size(), 9u);
    const auto& center = rep.cells[4];
    EXPECT_DOUBLE_EQ(center.demand_factor, 1.0);
    EXPECT_DOUBLE_EQ(center.lead_factor, 1.0);
    EXPECT_DOUBLE_EQ(center.relative_cost_per_unit, 0.0);
    double expected = 0.0;
    for (auto seed : seeds) {
        const auto r = run_episode(b1(), PolicyKind::agentic, seed);
        expected += r.metrics.total_cost.currency() / static_cast<double>(r.metrics.demand) / 2.0;
    }
    EXPECT_NEAR(center.cost_per_unit_demand, expected, 1e-9);
    EXPECT_GT(rep.cells[8].mean_demand, rep.cells[0].mean_demand);
}
