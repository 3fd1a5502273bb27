#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "replenish/coordination.hpp"
#include "replenish/core.hpp"
#include "replenish/demand.hpp"
#include "replenish/forecast.hpp"
#include "replenish/negotiation.hpp"
#include "replenish/policies.hpp"
#include "replenish/supplier.hpp"
#include "replenish/trend.hpp"

namespace replenish {

struct SkuSpec {
    Sku sku;
    DemandModel demand;
    Units initial_stock = 0;
    std::optional<ForecastConfig> forecast;  // falls back to Scenario::forecast
    /// Trend candidates are not stocked until the trend agent adopts them.
    bool candidate = false;
};

struct TrendCandidate {
    std::string sku_id;
    SignalModel signal;
    /// Demand seed for a newly adopted SKU: conversion * latest volume.
    double conversion = 0.1;
};

struct TrendSettings {
    GatePolicy gate;
    int window = 7;
    TrendScoreParams score;
    std::vector<TrendCandidate> candidates;
};

struct Scenario {
    int schema_version = 1;
    std::string name;
    int horizon = 91;
    int warmup = 28;
    std::uint64_t master_seed = 1;
    std::vector<SkuSpec> skus;
    std::vector<SupplierOffer> offers;
    DisruptionModel disruption;
    GlobalConstraints constraints;
    PolicyParams policy;
    ForecastConfig forecast;
    SupplierScoreWeights weights;
    NegotiationParams negotiation;
    TrendSettings trend;

    const SkuSpec* find_sku(const std::string& id) const;
    /// Offers for a SKU in catalogue order.
    std::vector<const SupplierOffer*> offers_for(const std::string& sku_id) const;
    const TrendCandidate* find_candidate(const std::string& sku_id) const;

    /// Every violated invariant, not just the first.
    std::vector<std::string> validation_errors() const;
    /// Throws ScenarioError carrying validation_errors() when non-empty.
    void validate() const;
};

class ScenarioError : public Error {
public:
    explicit ScenarioError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const { return errors_; }

private:
    std::vector<std::string> errors_;
};

/// Scales every demand mean by demand_factor and every lead time by
/// lead_factor (round half up, at least 1). Factors must lie in [0.5, 1.5].
Scenario scale_scenario(const Scenario& scenario, double demand_factor, double lead_factor);

/// Stable textual rendering of every field; the basis of scenario_hash.
std::string canonical_form(const Scenario& scenario);
std::uint64_t scenario_hash(const Scenario& scenario);

}  // namespace replenish
