#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "replenish/oracle.hpp"
#include "replenish/scenario.hpp"

namespace replenish {

/// Switches for the agentic policy's sub-agents (ablations). Baselines always
/// order from the first-listed supplier at list price and never adopt
/// trend candidates.
struct RunOptions {
    bool negotiation = true;
    bool trend = true;
    bool supplier_selection = true;
    OracleConfig oracle;
};

/// One SKU in one period. Costs are those accrued in the period.
struct SkuPeriodRecord {
    Period period = 0;
    std::string sku_id;
    Units on_hand_start = 0;
    Units received = 0;
    Units demand = 0;
    Units sales = 0;
    Units stockout_units = 0;
    Units spoiled = 0;
    Units on_hand_end = 0;
    Units pipeline_end = 0;
    CostAccounts costs;
    Money inventory_value;  // end of period, at purchase price
    Money cogs;
};

struct OrderLogEntry {
    Period placed_at = 0;
    std::string sku_id;
    std::string supplier_id;
    Units quantity = 0;
    double list_price = 0.0;
    double unit_price = 0.0;
    Period promised_arrival = 0;
    Period realized_arrival = 0;
    Units delivered = 0;
    bool delayed = false;
    bool short_shipped = false;
    bool funded = false;
    double criticality = 0.0;
};

struct AdoptionEvent {
    Period period = 0;
    std::string sku_id;
    GateDecision decision = GateDecision::reject;
    double score = 0.0;
};

struct Metrics {
    int sku_periods = 0;
    int stockout_periods = 0;
    double stockout_rate = 0.0;
    double fill_rate = 1.0;
    Units demand = 0;
    Units sales = 0;
    Units stockout_units = 0;
    Units spoiled_units = 0;
    double avg_inventory_value = 0.0;
    CostAccounts costs;
    Money total_cost;
    Money cogs;
    double inventory_turnover = 0.0;
    int orders_placed = 0;
    int orders_deferred = 0;
    int adopted = 0;
    double trend_roi = 0.0;
    bool trend_roi_defined = false;
    double top_seller_fraction = 0.0;
};

/// Named numeric view of Metrics, in a fixed column order.
std::vector<std::pair<std::string, double>> metric_table(const Metrics& m);

struct RunReport {
    std::string scenario_name;
    std::uint64_t scenario_hash = 0;
    PolicyKind policy = PolicyKind::agentic;
    std::uint64_t seed = 0;
    int horizon = 0;
    int warmup = 0;
    Metrics metrics;
    std::vector<SkuPeriodRecord> records;  // every period, warm-up included
    std::vector<OrderLogEntry> orders;
    std::vector<AdoptionEvent> adoptions;
    std::vector<std::string> adopted;
    TrendRoiReport trend;
    /// Ledger-side cumulative accounts per SKU over the whole horizon.
    std::vector<std::pair<std::string, CostAccounts>> ledger_totals;
};

/// Metrics over periods >= warmup.
Metrics compute_metrics(const std::vector<SkuPeriodRecord>& records, int warmup);

/// Runs one episode. Per period, in order: receive shipments, realize and
/// fulfil demand, age and spoil, update forecasts and trend scores, monitor,
/// decide, allocate to suppliers, negotiate, arbitrate, commit (disruptions
/// drawn here), accrue costs. `seed` replaces the scenario's master seed.
RunReport run_episode(const Scenario& scenario, PolicyKind policy, std::uint64_t seed, const RunOptions& options = {});

/// Conservation, non-negativity and cost-completeness violations of a report
/// (empty when the books balance).
std::vector<std::string> accounting_violations(const RunReport& report);

struct Variant {
    std::string label;
    std::shared_ptr<const Scenario> scenario;
    PolicyKind policy = PolicyKind::agentic;
    RunOptions options;
};

struct MetricSummary {
    std::string metric;
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation over seeds
};

struct VariantResult {
    std::string label;
    PolicyKind policy = PolicyKind::agentic;
    std::vector<Metrics> per_seed;
    std::vector<MetricSummary> summary;
};

struct ComparisonReport {
    std::vector<std::uint64_t> seeds;
    std::vector<VariantResult> variants;

    /// Per-seed paired difference (variant minus the first variant).
    std::vector<double> paired_delta(std::size_t variant, const std::string& metric) const;
    const VariantResult& at(const std::string& label) const;
};

/// Worker count from REPLENISH_SIM_THREADS, else the hardware concurrency.
int default_thread_count();

/// Runs every (variant, seed) pair; runs are independent and may execute in
/// parallel, results are assembled in (variant, seed) order.
ComparisonReport run_variants(const std::vector<Variant>& variants, const std::vector<std::uint64_t>& seeds,
                              int threads = 0);

/// Same scenario, several policies, common random numbers per seed.
ComparisonReport run_comparison(const Scenario& scenario, const std::vector<PolicyKind>& policies,
                                const std::vector<std::uint64_t>& seeds, const RunOptions& options = {},
                                int threads = 0);

/// full, no_negotiation, no_trend, no_supplier_selection.
ComparisonReport run_ablation(const Scenario& scenario, const std::vector<std::uint64_t>& seeds, int threads = 0);

struct SensitivityCell {
    double demand_factor = 1.0;
    double lead_factor = 1.0;
    double mean_total_cost = 0.0;
    double mean_demand = 0.0;
    double cost_per_unit_demand = 0.0;  // mean over seeds of total_cost / demand
    double relative_total_cost = 0.0;   // vs the (1, 1) cell
    double relative_cost_per_unit = 0.0;
    std::vector<Metrics> per_seed;
};

struct SensitivityReport {
    std::vector<SensitivityCell> cells;  // demand-major order
};

/// Agentic policy on every (demand_factor, lead_factor) pair. A (1, 1) cell is
/// always evaluated as the reference even when absent from the grid.
SensitivityReport run_sensitivity(const Scenario& scenario, const std::vector<double>& demand_factors,
                                  const std::vector<double>& lead_factors, const std::vector<std::uint64_t>& seeds,
                                  int threads = 0);

}  // namespace replenish
