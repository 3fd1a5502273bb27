#include <gtest/gtest.h>

#include <algorithm>

#include "replenish/scenario_io.hpp"

using namespace replenish;

namespace {

const std::string kMinimal = R"(schema_version: 1
name: tiny
horizon: 10
warmup: 2
skus:
  - id: A
    category: grocery
    holding_cost: 0.1
    stockout_penalty: 2
    demand: {kind: stationary, mean: 5}
suppliers:
  - {id: s1, lead_time: 2}
offers:
  - {supplier: s1, sku: A, unit_cost: 1.5}
)";

std::vector<std::string> errors_of(const std::string& text) {
    try {
        parse_scenario_text(text, "t.yaml");
    } catch (const ScenarioError& e) {
        return e.errors();
    }
    return {};
}

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
    return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) { return e.find(needle) != e.npos; });
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

}  // namespace

TEST(ScenarioIo, MinimalScenarioWithDefaults) {
    const Scenario s = parse_scenario_text(kMinimal);
    EXPECT_EQ(s.name, "tiny");
    EXPECT_EQ(s.horizon, 10);
    ASSERT_EQ(s.skus.size(), 1u);
    EXPECT_DOUBLE_EQ(s.skus[0].demand.base_mean, 5.0);
    ASSERT_EQ(s.offers.size(), 1u);
    EXPECT_EQ(s.offers[0].lead_time, 2);  // inherited from the supplier entry
    EXPECT_FALSE(s.offers[0].capacity_per_order.has_value());
    EXPECT_EQ(s.policy.kind, PolicyKind::agentic);
    EXPECT_FALSE(s.constraints.budget_per_period.has_value());
}

TEST(ScenarioIo, OfferFieldsOverrideSupplierDefaults) {
    const auto s = parse_scenario_text(
        replace(kMinimal, "unit_cost: 1.5}", "unit_cost: 1.5, lead_time: 5, capacity: 40, moq: 4}"));
    EXPECT_EQ(s.offers[0].lead_time, 5);
    EXPECT_EQ(s.offers[0].capacity_per_order, 40);
    EXPECT_EQ(s.offers[0].moq, 4);
}

TEST(ScenarioIo, UnboundedConstraintsSpelledOut) {
    const auto s = parse_scenario_text(kMinimal + "constraints: {budget_per_period: 250.5, warehouse_capacity: inf}\n");
    EXPECT_EQ(s.constraints.budget_per_period, Money::from_currency(250.5));
    EXPECT_FALSE(s.constraints.warehouse_capacity.has_value());
}

TEST(ScenarioIo, DuplicateSkuIdNamesTheId) {
    const std::string dup = replace(kMinimal, "suppliers:", R"(  - id: A
    demand: {mean: 1}
suppliers:)");
    const auto errors = errors_of(dup);
    ASSERT_FALSE(errors.empty());
    EXPECT_TRUE(any_contains(errors, "duplicate sku id 'A'"));
}

TEST(ScenarioIo, DanglingOfferNamesBothIds) {
    const auto errors = errors_of(replace(kMinimal, "sku: A,", "sku: GHOST,"));
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_NE(errors[0].find("GHOST"), std::string::npos);
    EXPECT_NE(errors[0].find("s1"), std::string::npos);
    EXPECT_NE(errors[0].find("t.yaml:14:"), std::string::npos) << errors[0];
}

TEST(ScenarioIo, UnknownKeyIsRejectedWithLine) {
    const auto errors = errors_of(replace(kMinimal, "    stockout_penalty: 2\n", "    stockout_penalty: 2\n    colour: red\n"));
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_NE(errors[0].find("t.yaml:10:"), std::string::npos) << errors[0];
    EXPECT_NE(errors[0].find("unknown field 'colour'"), std::string::npos);
}

TEST(ScenarioIo, CollectsEveryError) {
    std::string text = replace(kMinimal, "name: tiny\n", "");
    text = replace(text, "mean: 5}", "mean: 5, kind2: x}");
    text = replace(text, "unit_cost: 1.5}", "unit_cost: 1.5, supplier_rating: 3}");
    const auto errors = errors_of(text);
    EXPECT_EQ(errors.size(), 3u);
    EXPECT_TRUE(any_contains(errors, "missing required field 'name'"));
    EXPECT_TRUE(any_contains(errors, "kind2"));
    EXPECT_TRUE(any_contains(errors, "supplier_rating"));
}

TEST(ScenarioIo, BadValuesAndSchemaVersion) {
    EXPECT_TRUE(any_contains(errors_of(replace(kMinimal, "schema_version: 1", "schema_version: 9")), "schema"));
    EXPECT_TRUE(any_contains(errors_of(replace(kMinimal, "kind: stationary", "kind: chaotic")), "must be one of"));
    EXPECT_TRUE(any_contains(errors_of(replace(kMinimal, "horizon: 10", "horizon: ten")), "wrong type"));
    EXPECT_FALSE(errors_of(replace(kMinimal, "warmup: 2", "warmup: 10")).empty());
    EXPECT_FALSE(errors_of(replace(kMinimal, "holding_cost: 0.1", "holding_cost: -1")).empty());
    EXPECT_FALSE(errors_of("skus: [").empty());
}

TEST(ScenarioIo, MissingFileIsAnError) {
    EXPECT_THROW(parse_scenario("/nonexistent/scenario.yaml"), Error);
}

TEST(ScenarioIo, BundledBenchmarksValidate) {
    for (const char* name : {"B0", "B1", "B2"}) {
        const auto path = std::filesystem::path(REPLENISH_SCENARIO_DIR) / (std::string(name) + ".yaml");
        const Scenario s = parse_scenario(path);
        EXPECT_EQ(s.name, name);
        EXPECT_NO_THROW(s.validate());
    }
    const auto b1 = parse_scenario(std::filesystem::path(REPLENISH_SCENARIO_DIR) / "B1.yaml");
    const auto b2 = parse_scenario(std::filesystem::path(REPLENISH_SCENARIO_DIR) / "B2.yaml");
    EXPECT_EQ(b1.skus.size(), 20u);
    EXPECT_EQ(b2.skus.size(), 25u);
    EXPECT_EQ(b2.trend.candidates.size(), 5u);
    EXPECT_EQ(b1.horizon, 91);
}

TEST(ScenarioIo, HashTracksContent) {
    const auto a = parse_scenario_text(kMinimal);
    const auto b = parse_scenario_text(kMinimal);
    const auto c = parse_scenario_text(replace(kMinimal, "mean: 5", "mean: 6"));
    EXPECT_EQ(scenario_hash(a), scenario_hash(b));
    EXPECT_NE(scenario_hash(a), scenario_hash(c));
}
