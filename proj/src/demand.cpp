#include "replenish/demand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace replenish {

namespace {

Units round_half_up(double x) { return static_cast<Units>(std::floor(x + 0.5)); }

void check_probability(double p, const char* what) {
    if (p < 0.0 || p > 1.0) throw Error(std::string("disruption: ") + what + " must be in [0,1]");
}

}  // namespace

const char* to_string(DemandKind k) {
    switch (k) {
        case DemandKind::stationary: return "stationary";
        case DemandKind::seasonal: return "seasonal";
        case DemandKind::trending: return "trending";
    }
    return "stationary";
}

const char* to_string(NoiseKind k) { return k == NoiseKind::gaussian ? "gaussian" : "poisson"; }

double DemandModel::mean_at(Period t) const {
    const double season = 1.0 + season_amplitude * std::sin(2.0 * std::numbers::pi * t / season_period);
    double m = base_mean;
    switch (kind) {
        case DemandKind::stationary: break;
        case DemandKind::seasonal: m = base_mean * season; break;
        case DemandKind::trending: m = (base_mean + trend_slope * t) * season; break;
    }
    return std::max(0.0, m);
}

void DemandModel::validate() const {
    if (base_mean < 0.0) throw Error("demand: mean must be >= 0");
    if (cv < 0.0) throw Error("demand: cv must be >= 0");
    if (season_period < 1) throw Error("demand: season_period must be >= 1");
    if (season_amplitude < 0.0) throw Error("demand: amplitude must be >= 0");
}

DemandTrace generate_trace(const DemandModel& model, int horizon, Rng stream) {
    model.validate();
    if (horizon < 1) throw Error("demand: horizon must be >= 1");
    DemandTrace trace(static_cast<std::size_t>(horizon));
    for (int t = 0; t < horizon; ++t) {
        const double m = model.mean_at(t);
        Units d = 0;
        if (model.cv == 0.0) {
            d = round_half_up(m);
        } else if (model.noise == NoiseKind::gaussian) {
            d = std::max<Units>(0, round_half_up(m + model.cv * m * stream.normal()));
        } else {
            const double k = 1.0 / (model.cv * model.cv);
            const double g = stream.gamma(k) / k;
            d = stream.poisson(m * g);
        }
        trace[static_cast<std::size_t>(t)] = d;
    }
    return trace;
}

void DisruptionModel::validate() const {
    check_probability(delay_probability, "delay probability");
    check_probability(shortage_probability, "shortage probability");
    check_probability(shock_probability, "demand shock probability");
    if (delay_extra_periods < 1) throw Error("disruption: extra_periods must be >= 1");
    if (fill_fraction < 0.0 || fill_fraction >= 1.0) throw Error("disruption: fill_fraction must be in [0,1)");
    if (shock_multiplier < 0.0) throw Error("disruption: shock multiplier must be >= 0");
}

void apply_demand_shocks(DemandTrace& trace, const DisruptionModel& disruption, Rng stream) {
    if (!disruption.enabled || disruption.shock_probability == 0.0) return;
    for (auto& d : trace) {
        if (stream.bernoulli(disruption.shock_probability))
            d = round_half_up(static_cast<double>(d) * disruption.shock_multiplier);
    }
}

RealizedDelivery perturb_order(const OrderDecision& order, const SupplierOffer& offer,
                               const DisruptionModel& disruption, Rng stream) {
    RealizedDelivery out{order.promised_arrival, order.quantity, false, false};
    if (!disruption.enabled) return out;
    const double unreliability = 1.0 - offer.reliability;
    const double u_delay = stream.uniform();
    const double u_short = stream.uniform();
    if (u_delay < disruption.delay_probability * unreliability) {
        out.arrival_period += disruption.delay_extra_periods;
        out.delayed = true;
    }
    if (u_short < disruption.shortage_probability * unreliability) {
        out.delivered = static_cast<Units>(std::floor(disruption.fill_fraction * static_cast<double>(order.quantity) + 1e-9));
        out.short_shipped = true;
    }
    return out;
}

Rng order_stream(std::uint64_t master_seed, const OrderDecision& order, int ordinal) {
    return Rng::stream(master_seed, "disruption/" + order.sku_id + "/" + order.supplier_id + "/" +
                                        std::to_string(order.placed_at) + "/" + std::to_string(ordinal));
}

}  // namespace replenish
