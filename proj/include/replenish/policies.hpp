#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "replenish/core.hpp"

namespace replenish {

enum class PolicyKind { static_rop, rule80, sQ, newsvendor, agentic, oracle };

const char* to_string(PolicyKind k);
std::optional<PolicyKind> parse_policy_kind(const std::string& name);
/// Comma-separated list of every valid policy name.
std::string policy_kind_names();

struct PolicyParams {
    PolicyKind kind = PolicyKind::agentic;
    double z = 1.645;
    int review_period = 1;
    double order_fixed_cost = 50.0;
    double buffer_fraction = 0.5;
    int monitor_horizon = 1;
    /// rule80 reference stock, in periods of average warm-up demand.
    double rule80_cover = 10.0;
    /// Divide forecast demand by (1 - decay) for decaying SKUs (agentic only).
    bool spoilage_adjustment = true;

    void validate() const;
};

enum class Rationale {
    none,
    below_reorder_point,
    rule80_threshold,
    below_s,
    order_up_to,
    trend_buffered,
    spoilage_adjusted,
    oracle_plan,
};

const char* to_string(Rationale r);

struct ReorderProposal {
    std::string sku_id;
    Units quantity = 0;
    Period needed_by = 0;
    double criticality = 0.0;
    Rationale rationale = Rationale::none;
    /// Set when the critical ratio hit the 0.999 cap (zero holding cost).
    bool degenerate_ratio = false;

    bool operator==(const ReorderProposal&) const = default;
};

/// What a policy may read about one SKU at decision time.
struct SkuState {
    const Sku* sku = nullptr;
    Period period = 0;
    Units on_hand = 0;
    Units pipeline = 0;
    int lead_time = 1;  // of the supplier the SKU would order from

    Units position() const { return on_hand + pipeline; }
};

struct ForecastView {
    double mean = 0.0;
    double error_std = 0.0;
};

double normal_pdf(double x);
double normal_cdf(double x);
/// Inverse standard normal CDF (Acklam's rational approximation, refined by
/// one Halley step); absolute error well below 1e-9 on (0, 1).
double normal_quantile(double p);
/// Standard normal loss function E[(Z - k)+].
double normal_loss(double k);

/// mean * L + z * std * sqrt(L), rounded half-up.
Units compute_rop(double mean, double std, int lead_time, double z);
/// sqrt(2 K D / h) rounded half-up, at least 1. Throws Error when h <= 0.
Units compute_eoq(double demand_per_period, double fixed_cost, double holding_cost);

/// Expected lost units over `cover` periods when starting from `position`.
double expected_shortfall(double mean, double std, double cover, Units position);

struct MonitorInput {
    std::string sku_id;
    Units on_hand = 0;
    Units pipeline = 0;
    double mean = 0.0;
    double error_std = 0.0;
    int lead_time = 1;
    double stockout_penalty = 0.0;
};

struct MonitorFlag {
    std::string sku_id;
    double criticality = 0.0;
};

/// Flags SKUs whose projected position (on_hand + pipeline - mean * horizon)
/// falls below their reorder point; most critical first, then by id.
std::vector<MonitorFlag> monitor_flags(std::span<const MonitorInput> inputs, const PolicyParams& params, int horizon);

struct StaticRopThresholds {
    Units reorder_point = 0;
    Units order_up_to = 0;
};

/// Fixed thresholds from warm-up history: ROP from the history mean and
/// standard deviation, order-up-to = ROP + EOQ.
StaticRopThresholds calibrate_static_rop(std::span<const Units> history, int lead_time, const PolicyParams& params,
                                         double holding_cost);
/// rule80 reference level: history mean times rule80_cover, rounded half-up.
Units calibrate_rule80(std::span<const Units> history, const PolicyParams& params);

ReorderProposal decide_static_rop(const SkuState& state, const StaticRopThresholds& thresholds);
ReorderProposal decide_rule80(const SkuState& state, Units max_stock);
ReorderProposal decide_sQ(const SkuState& state, const ForecastView& forecast, const PolicyParams& params);
ReorderProposal decide_newsvendor(const SkuState& state, const ForecastView& forecast, const PolicyParams& params);
/// Newsvendor with the demand mean inflated by buffer_fraction * trend_boost
/// (trend_boost in [0,1]) and, for decaying SKUs, divided by (1 - decay).
ReorderProposal decide_agentic(const SkuState& state, const ForecastView& forecast, double trend_boost,
                               const PolicyParams& params);

}  // namespace replenish
