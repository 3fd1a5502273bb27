#pragma once

#include <vector>

#include "replenish/core.hpp"
#include "replenish/rng.hpp"

namespace replenish {

enum class DemandKind { stationary, seasonal, trending };
enum class NoiseKind { gaussian, poisson };

const char* to_string(DemandKind k);
const char* to_string(NoiseKind k);

struct DemandModel {
    DemandKind kind = DemandKind::stationary;
    double base_mean = 0.0;
    double cv = 0.0;
    int season_period = 7;
    double season_amplitude = 0.0;  // fraction of the mean
    double trend_slope = 0.0;       // units / period^2
    NoiseKind noise = NoiseKind::gaussian;

    /// Deterministic mean at period t, clamped at zero.
    ///   stationary: mu
    ///   seasonal:   mu * (1 + A sin(2 pi t / P))
    ///   trending:   (mu + slope t) * (1 + A sin(2 pi t / P))
    double mean_at(Period t) const;
    void validate() const;
};

using DemandTrace = std::vector<Units>;

/// Realized demand; a pure function of (model, horizon, stream).
///
/// gaussian: max(0, round(m + cv m Z)).
/// poisson:  Poisson(m G) with G ~ Gamma(1/cv^2, cv^2), so variance m + (cv m)^2.
/// cv = 0 yields round(m) for both kinds.
DemandTrace generate_trace(const DemandModel& model, int horizon, Rng stream);

struct DisruptionModel {
    bool enabled = false;
    double delay_probability = 0.0;
    int delay_extra_periods = 1;
    double shortage_probability = 0.0;
    double fill_fraction = 0.5;
    double shock_probability = 0.0;
    double shock_multiplier = 1.0;

    void validate() const;
};

/// Multiplies demand in randomly chosen periods by the shock multiplier.
void apply_demand_shocks(DemandTrace& trace, const DisruptionModel& disruption, Rng stream);

struct RealizedDelivery {
    Period arrival_period = 0;
    Units delivered = 0;
    bool delayed = false;
    bool short_shipped = false;
};

/// Draws the realized arrival and quantity of a committed order. Delay and
/// shortage fire with probability (base probability) * (1 - reliability).
/// Both uniforms are always consumed so the stream position does not depend
/// on the outcome.
RealizedDelivery perturb_order(const OrderDecision& order, const SupplierOffer& offer,
                               const DisruptionModel& disruption, Rng stream);

/// Stream used for the disruption draw of one order; keyed by what the order
/// is, so that two policies placing the same order see the same outcome.
Rng order_stream(std::uint64_t master_seed, const OrderDecision& order, int ordinal);

}  // namespace replenish
