#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "replenish/core.hpp"
#include "replenish/demand.hpp"
#include "replenish/negotiation.hpp"
#include "replenish/policies.hpp"

namespace replenish {

struct OracleConfig {
    /// Longest stretch of demand a single order may be sized to cover.
    int max_cover_periods = 20;
    /// States kept per epoch (cheapest first). Exact below this width.
    int max_states_per_epoch = 8;
    /// Placements searched before the nominal date when deliveries can be late.
    int max_delay_search = 4;
    /// Plans are searched exhaustively (dynamic program over placement
    /// periods) when the count of candidate plans is at most this.
    double exact_plan_limit = 1e6;
};

/// Everything the clairvoyant planner may read for one SKU.
struct OracleProblem {
    /// Ledger after the current period's receipt, sales and spoilage (costs of
    /// the current period not yet accrued).
    SkuLedger ledger;
    Period now = 0;
    int horizon = 0;
    std::span<const Units> demand;  // realized trace, indexed by period
    std::vector<SupplierOffer> offers;
    std::optional<NegotiationParams> negotiation;  // nullopt: list prices
    DisruptionModel disruption;
    std::uint64_t master_seed = 0;
};

struct PlannedOrder {
    OrderDecision order;
    RealizedDelivery delivery;
};

struct OraclePlan {
    std::vector<PlannedOrder> orders;  // by placement period, then supplier id
    /// Purchases plus all costs accrued from period now + 1 to the horizon.
    Money cost;
    /// Periods whose demand could not be reached by any supplier.
    Units unavoidable_stockout_units = 0;
};

/// Minimum-cost replenishment plan with perfect foresight of demand and of
/// every order's disruption outcome, subject to serving all demand that any
/// supplier can reach in time.
///
/// Dynamic program over epochs, the first period at which stock on hand would
/// fall short. At each epoch every supplier able to land an order exactly then
/// is tried with each quantity that is minimal for covering through a later
/// period (and any larger quantity up to the next breakpoint that is strictly
/// cheaper to buy). States are full ledger copies, so spoilage and expiry are
/// costed with the engine's own arithmetic.
///
/// The epoch search only lands stock just in time. When disruptions are on,
/// an earlier arrival can be cheaper (outcomes depend on the placement date
/// and a short shipment is billed for what arrives), so small problems are
/// solved exactly instead: every quantity for every (supplier, placement
/// period), with states merged by ledger contents after each period.
OraclePlan plan_oracle(const OracleProblem& problem, const OracleConfig& config = {});

/// Negotiation stream of an order; shared by the engine and the planner.
Rng negotiation_stream(std::uint64_t master_seed, const OrderDecision& order, int ordinal);

/// Quantity the plan places at the state's period (0 if none).
ReorderProposal decide_oracle(const SkuState& state, const OraclePlan& plan);

}  // namespace replenish
