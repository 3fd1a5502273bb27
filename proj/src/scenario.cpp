#include "replenish/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace replenish {

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (const auto& x : xs) {
        if (!out.empty()) out += "; ";
        out += x;
    }
    return out;
}

template <typename F>
void collect(std::vector<std::string>& errors, F&& check) {
    try {
        check();
    } catch (const Error& e) {
        errors.emplace_back(e.what());
    }
}

std::string opt(const std::optional<int>& x) { return x ? std::to_string(*x) : "inf"; }
std::string opt(const std::optional<Units>& x) { return x ? std::to_string(*x) : "inf"; }
std::string opt(const std::optional<Money>& x) { return x ? x->to_string() : "inf"; }

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : Error("invalid scenario: " + join(errors)), errors_(std::move(errors)) {}

const SkuSpec* Scenario::find_sku(const std::string& id) const {
    auto it = std::find_if(skus.begin(), skus.end(), [&](const SkuSpec& s) { return s.sku.id == id; });
    return it == skus.end() ? nullptr : &*it;
}

std::vector<const SupplierOffer*> Scenario::offers_for(const std::string& sku_id) const {
    std::vector<const SupplierOffer*> out;
    for (const auto& o : offers)
        if (o.sku_id == sku_id) out.push_back(&o);
    return out;
}

const TrendCandidate* Scenario::find_candidate(const std::string& sku_id) const {
    auto it = std::find_if(trend.candidates.begin(), trend.candidates.end(),
                           [&](const TrendCandidate& c) { return c.sku_id == sku_id; });
    return it == trend.candidates.end() ? nullptr : &*it;
}

std::vector<std::string> Scenario::validation_errors() const {
    std::vector<std::string> errors;
    if (horizon < 1) errors.push_back("horizon must be >= 1");
    if (warmup < 0) errors.push_back("warmup must be >= 0");
    if (horizon <= warmup) errors.push_back("horizon must exceed warmup");
    if (skus.empty()) errors.push_back("at least one sku is required");

    std::set<std::string> sku_ids;
    for (const auto& s : skus) {
        if (!sku_ids.insert(s.sku.id).second) errors.push_back("duplicate sku id '" + s.sku.id + "'");
        collect(errors, [&] { s.sku.validate(); });
        collect(errors, [&] { s.demand.validate(); });
        if (s.forecast) collect(errors, [&] { s.forecast->validate(); });
        if (s.initial_stock < 0) errors.push_back("sku " + s.sku.id + ": initial_stock must be >= 0");
        if (s.candidate && !find_candidate(s.sku.id))
            errors.push_back("sku " + s.sku.id + " is marked candidate but has no trend signal");
    }

    std::set<std::pair<std::string, std::string>> offer_keys;
    for (const auto& o : offers) {
        if (!sku_ids.contains(o.sku_id))
            errors.push_back("offer from supplier '" + o.supplier_id + "' references unknown sku '" + o.sku_id + "'");
        if (!offer_keys.insert({o.supplier_id, o.sku_id}).second)
            errors.push_back("duplicate offer for supplier '" + o.supplier_id + "' and sku '" + o.sku_id + "'");
        collect(errors, [&] { o.validate(); });
    }
    for (const auto& s : skus)
        if (offers_for(s.sku.id).empty()) errors.push_back("sku " + s.sku.id + " has no supplier offer");

    std::set<std::string> candidate_ids;
    for (const auto& c : trend.candidates) {
        if (!candidate_ids.insert(c.sku_id).second) errors.push_back("duplicate trend candidate '" + c.sku_id + "'");
        const SkuSpec* s = find_sku(c.sku_id);
        if (!s)
            errors.push_back("trend candidate references unknown sku '" + c.sku_id + "'");
        else if (!s->candidate)
            errors.push_back("trend candidate '" + c.sku_id + "' must be declared with candidate: true");
        collect(errors, [&] { c.signal.validate(); });
        if (c.conversion < 0.0) errors.push_back("trend candidate " + c.sku_id + ": conversion must be >= 0");
    }
    if (trend.window < 2) errors.push_back("trend window must be >= 2");

    collect(errors, [&] { disruption.validate(); });
    collect(errors, [&] { constraints.validate(); });
    collect(errors, [&] { policy.validate(); });
    collect(errors, [&] { forecast.validate(); });
    collect(errors, [&] { weights.validate(); });
    collect(errors, [&] { negotiation.validate(); });
    collect(errors, [&] { trend.gate.validate(); });
    return errors;
}

void Scenario::validate() const {
    auto errors = validation_errors();
    if (!errors.empty()) throw ScenarioError(std::move(errors));
}

Scenario scale_scenario(const Scenario& scenario, double demand_factor, double lead_factor) {
    auto in_domain = [](double f) { return f >= 0.5 && f <= 1.5; };
    if (!in_domain(demand_factor)) throw Error(fmt::format("scale_scenario: demand factor {} outside [0.5, 1.5]", demand_factor));
    if (!in_domain(lead_factor)) throw Error(fmt::format("scale_scenario: lead factor {} outside [0.5, 1.5]", lead_factor));
    Scenario out = scenario;
    for (auto& s : out.skus) s.demand.base_mean *= demand_factor;
    for (auto& o : out.offers)
        o.lead_time = std::max(1, static_cast<int>(std::floor(o.lead_time * lead_factor + 0.5 + 1e-9)));
    return out;
}

std::string canonical_form(const Scenario& s) {
    std::string out;
    auto line = [&](const std::string& text) {
        out += text;
        out += '\n';
    };
    line(fmt::format("schema_version={} name={} horizon={} warmup={} master_seed={}", s.schema_version, s.name,
                     s.horizon, s.warmup, s.master_seed));
    for (const auto& k : s.skus) {
        line(fmt::format("sku {} {} h={:.6f} p={:.6f} decay={:.6f} shelf={} margin={:.6f} init={} cand={}", k.sku.id,
                         to_string(k.sku.category), k.sku.holding_cost, k.sku.stockout_penalty, k.sku.decay_fraction,
                         opt(k.sku.shelf_life), k.sku.unit_margin, k.initial_stock, k.candidate));
        line(fmt::format("  demand {} mean={:.6f} cv={:.6f} period={} amp={:.6f} slope={:.6f} noise={}",
                         to_string(k.demand.kind), k.demand.base_mean, k.demand.cv, k.demand.season_period,
                         k.demand.season_amplitude, k.demand.trend_slope, to_string(k.demand.noise)));
        if (k.forecast)
            line(fmt::format("  forecast {} alpha={:.6f} window={} period={} errwin={}", to_string(k.forecast->method),
                             k.forecast->alpha, k.forecast->window, k.forecast->season_period,
                             k.forecast->error_window));
    }
    for (const auto& o : s.offers)
        line(fmt::format("offer {} {} c={:.6f} l={} moq={} cap={} rel={:.6f} ship={:.6f} disc={:.6f}", o.supplier_id,
                         o.sku_id, o.unit_cost, o.lead_time, o.moq, opt(o.capacity_per_order), o.reliability,
                         o.fixed_shipping, o.max_discount));
    const auto& d = s.disruption;
    line(fmt::format("disruption on={} delay={:.6f}/{} short={:.6f}/{:.6f} shock={:.6f}/{:.6f}", d.enabled,
                     d.delay_probability, d.delay_extra_periods, d.shortage_probability, d.fill_fraction,
                     d.shock_probability, d.shock_multiplier));
    line(fmt::format("constraints budget={} capacity={} max_orders={}", opt(s.constraints.budget_per_period),
                     opt(s.constraints.warehouse_capacity), opt(s.constraints.max_orders_per_period)));
    const auto& p = s.policy;
    line(fmt::format("policy {} z={:.6f} R={} K={:.6f} buffer={:.6f} horizon={} rule80={:.6f} spoil_adj={}",
                     to_string(p.kind), p.z, p.review_period, p.order_fixed_cost, p.buffer_fraction,
                     p.monitor_horizon, p.rule80_cover, p.spoilage_adjustment));
    line(fmt::format("forecast {} alpha={:.6f} window={} period={} errwin={}", to_string(s.forecast.method),
                     s.forecast.alpha, s.forecast.window, s.forecast.season_period, s.forecast.error_window));
    line(fmt::format("weights {:.6f} {:.6f} {:.6f}", s.weights.cost, s.weights.lead, s.weights.reliability));
    const auto& n = s.negotiation;
    line(fmt::format("negotiation R={} open={:.6f} step={:.6f} rate={:.6f} qref={:.6f} jitter={:.6f}", n.max_rounds,
                     n.buyer_opening_discount, n.buyer_concession_step, n.supplier_concession_rate, n.quantity_ref,
                     n.jitter));
    const auto& g = s.trend.gate;
    line(fmt::format("trend window={} gate={:.6f}/{}/{}/{} score={:.6f}/{:.6f}/{:.6f}", s.trend.window, g.threshold,
                     g.persistence, g.mode == GateMode::auto_adopt ? "auto" : "human_queue", g.human_approval,
                     s.trend.score.slope_weight, s.trend.score.sentiment_weight, s.trend.score.slope_ref));
    for (const auto& c : s.trend.candidates) {
        const auto& m = c.signal;
        line(fmt::format("candidate {} {} base={:.6f} growth={:.6f} onset={} spike={:.6f} decay={:.6f} noise={:.6f} "
                         "sentiment={:.6f} conversion={:.6f}",
                         c.sku_id, to_string(m.shape), m.base_volume, m.growth, m.onset, m.spike_height, m.decay,
                         m.noise_cv, m.sentiment, c.conversion));
    }
    return out;
}

std::uint64_t scenario_hash(const Scenario& scenario) { return fnv1a64(canonical_form(scenario)); }

}  // namespace replenish
