#include "replenish/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace replenish {

namespace {

Units round_half_up(double x) { return static_cast<Units>(std::floor(x + 0.5)); }

constexpr double kRatioCap = 0.999;

double criticality_of(const SkuState& state, double mean, double std, double cover) {
    return state.sku->stockout_penalty * expected_shortfall(mean, std, cover, state.position());
}

ReorderProposal order_up_to(const SkuState& state, double mean, double std, const PolicyParams& params,
                            Rationale rationale) {
    ReorderProposal out{state.sku->id, 0, state.period + state.lead_time, 0.0, rationale, false};
    const double cover = static_cast<double>(state.lead_time + params.review_period);
    out.criticality = criticality_of(state, mean, std, cover);
    const double p = state.sku->stockout_penalty;
    if (p <= 0.0) {
        out.criticality = 0.0;
        return out;
    }
    const double overage = state.sku->holding_cost * cover;
    double ratio = p / (p + overage);
    if (ratio > kRatioCap) {
        ratio = kRatioCap;
        out.degenerate_ratio = true;
    }
    const Units level = std::max<Units>(0, round_half_up(mean * cover + normal_quantile(ratio) * std * std::sqrt(cover)));
    out.quantity = std::max<Units>(0, level - state.position());
    return out;
}

double mean_of(std::span<const Units> xs) {
    if (xs.empty()) return 0.0;
    return static_cast<double>(std::accumulate(xs.begin(), xs.end(), Units{0})) / static_cast<double>(xs.size());
}

}  // namespace

const char* to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::static_rop: return "static_rop";
        case PolicyKind::rule80: return "rule80";
        case PolicyKind::sQ: return "sQ";
        case PolicyKind::newsvendor: return "newsvendor";
        case PolicyKind::agentic: return "agentic";
        case PolicyKind::oracle: return "oracle";
    }
    return "agentic";
}

std::optional<PolicyKind> parse_policy_kind(const std::string& name) {
    for (auto k : {PolicyKind::static_rop, PolicyKind::rule80, PolicyKind::sQ, PolicyKind::newsvendor,
                   PolicyKind::agentic, PolicyKind::oracle})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

std::string policy_kind_names() { return "static_rop, rule80, sQ, newsvendor, agentic, oracle"; }

void PolicyParams::validate() const {
    if (z < 0.0) throw Error("policy: z must be >= 0");
    if (review_period < 1) throw Error("policy: review_period must be >= 1");
    if (order_fixed_cost < 0.0) throw Error("policy: order_fixed_cost must be >= 0");
    if (buffer_fraction < 0.0) throw Error("policy: buffer_fraction must be >= 0");
    if (monitor_horizon < 0) throw Error("policy: monitor_horizon must be >= 0");
    if (rule80_cover <= 0.0) throw Error("policy: rule80_cover must be > 0");
}

const char* to_string(Rationale r) {
    switch (r) {
        case Rationale::none: return "none";
        case Rationale::below_reorder_point: return "below_reorder_point";
        case Rationale::rule80_threshold: return "rule80_threshold";
        case Rationale::below_s: return "below_s";
        case Rationale::order_up_to: return "order_up_to";
        case Rationale::trend_buffered: return "trend_buffered";
        case Rationale::spoilage_adjusted: return "spoilage_adjusted";
        case Rationale::oracle_plan: return "oracle_plan";
    }
    return "none";
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (p <= 0.0) return -HUGE_VAL;
    if (p >= 1.0) return HUGE_VAL;
    if (p == 0.5) return 0.0;
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                             6.680131188771972e+01, -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double low = 0.02425;
    double x = 0.0;
    if (p < low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement.
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double normal_loss(double k) { return normal_pdf(k) - k * (1.0 - normal_cdf(k)); }

Units compute_rop(double mean, double std, int lead_time, double z) {
    const double l = static_cast<double>(lead_time);
    return round_half_up(mean * l + z * std * std::sqrt(l));
}

Units compute_eoq(double demand_per_period, double fixed_cost, double holding_cost) {
    if (holding_cost <= 0.0) throw Error("compute_eoq: holding cost must be > 0 (EOQ unbounded)");
    if (demand_per_period <= 0.0) throw Error("compute_eoq: demand must be > 0");
    if (fixed_cost < 0.0) throw Error("compute_eoq: fixed cost must be >= 0");
    return std::max<Units>(1, round_half_up(std::sqrt(2.0 * fixed_cost * demand_per_period / holding_cost)));
}

double expected_shortfall(double mean, double std, double cover, Units position) {
    const double mu = mean * cover;
    const double sigma = std * std::sqrt(cover);
    const double pos = static_cast<double>(position);
    if (sigma <= 0.0) return std::max(0.0, mu - pos);
    return sigma * normal_loss((pos - mu) / sigma);
}

std::vector<MonitorFlag> monitor_flags(std::span<const MonitorInput> inputs, const PolicyParams& params, int horizon) {
    std::vector<MonitorFlag> flags;
    for (const auto& in : inputs) {
        const Units rop = compute_rop(in.mean, in.error_std, in.lead_time, params.z);
        const double projected = static_cast<double>(in.on_hand + in.pipeline) - in.mean * horizon;
        if (projected < static_cast<double>(rop))
            flags.push_back({in.sku_id, in.stockout_penalty * (static_cast<double>(rop) - projected)});
    }
    std::sort(flags.begin(), flags.end(), [](const MonitorFlag& a, const MonitorFlag& b) {
        if (a.criticality != b.criticality) return a.criticality > b.criticality;
        return a.sku_id < b.sku_id;
    });
    return flags;
}

StaticRopThresholds calibrate_static_rop(std::span<const Units> history, int lead_time, const PolicyParams& params,
                                         double holding_cost) {
    const double mean = mean_of(history);
    double var = 0.0;
    for (Units x : history) var += (static_cast<double>(x) - mean) * (static_cast<double>(x) - mean);
    const double std = history.empty() ? 0.0 : std::sqrt(var / static_cast<double>(history.size()));
    StaticRopThresholds t;
    t.reorder_point = compute_rop(mean, std, lead_time, params.z);
    const Units lot = (mean > 0.0 && holding_cost > 0.0) ? compute_eoq(mean, params.order_fixed_cost, holding_cost)
                                                         : round_half_up(mean * params.review_period);
    t.order_up_to = t.reorder_point + lot;
    return t;
}

Units calibrate_rule80(std::span<const Units> history, const PolicyParams& params) {
    return round_half_up(mean_of(history) * params.rule80_cover);
}

ReorderProposal decide_static_rop(const SkuState& state, const StaticRopThresholds& thresholds) {
    ReorderProposal out{state.sku->id, 0, state.period + state.lead_time, 0.0, Rationale::none, false};
    if (state.position() < thresholds.reorder_point) {
        out.quantity = thresholds.order_up_to - state.position();
        out.rationale = Rationale::below_reorder_point;
        out.criticality = state.sku->stockout_penalty * static_cast<double>(out.quantity);
    }
    return out;
}

ReorderProposal decide_rule80(const SkuState& state, Units max_stock) {
    ReorderProposal out{state.sku->id, 0, state.period + state.lead_time, 0.0, Rationale::none, false};
    // Integer form of on_hand <= 0.2 * max_stock.
    if (5 * state.on_hand <= max_stock) {
        out.quantity = std::max<Units>(0, max_stock - state.on_hand);
        if (out.quantity > 0) out.rationale = Rationale::rule80_threshold;
        out.criticality = state.sku->stockout_penalty * static_cast<double>(out.quantity);
    }
    return out;
}

ReorderProposal decide_sQ(const SkuState& state, const ForecastView& forecast, const PolicyParams& params) {
    ReorderProposal out{state.sku->id, 0, state.period + state.lead_time, 0.0, Rationale::none, false};
    const Units s = compute_rop(forecast.mean, forecast.error_std, state.lead_time, params.z);
    if (state.position() < s) {
        out.quantity = compute_eoq(std::max(forecast.mean, 1e-9), params.order_fixed_cost,
                                   std::max(state.sku->holding_cost, 1e-9));
        out.rationale = Rationale::below_s;
        out.criticality = criticality_of(state, forecast.mean, forecast.error_std,
                                         static_cast<double>(state.lead_time + params.review_period));
    }
    return out;
}

ReorderProposal decide_newsvendor(const SkuState& state, const ForecastView& forecast, const PolicyParams& params) {
    return order_up_to(state, forecast.mean, forecast.error_std, params, Rationale::order_up_to);
}

ReorderProposal decide_agentic(const SkuState& state, const ForecastView& forecast, double trend_boost,
                               const PolicyParams& params) {
    const double boost = std::clamp(trend_boost, 0.0, 1.0);
    double scale = 1.0 + params.buffer_fraction * boost;
    Rationale why = boost > 0.0 ? Rationale::trend_buffered : Rationale::order_up_to;
    const double decay = state.sku->decay_fraction;
    if (params.spoilage_adjustment && decay > 0.0 && decay < 1.0) {
        scale /= (1.0 - decay);
        why = Rationale::spoilage_adjusted;
    }
    return order_up_to(state, forecast.mean * scale, forecast.error_std, params, why);
}

}  // namespace replenish
