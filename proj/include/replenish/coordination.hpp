#pragma once

#include <optional>
#include <vector>

#include "replenish/core.hpp"

namespace replenish {

/// Global limits enforced on each period's committed orders. nullopt means
/// unbounded.
struct GlobalConstraints {
    std::optional<Money> budget_per_period;
    std::optional<Units> warehouse_capacity;
    std::optional<int> max_orders_per_period;

    void validate() const;
};

struct Arbitration {
    std::vector<OrderDecision> funded;
    std::vector<OrderDecision> deferred;
};

/// Greedy funding by criticality per unit of landed cost (descending; ties by
/// SKU id then supplier id). Whole orders only: an order that would break the
/// budget, the warehouse capacity or the order-count limit is deferred and
/// later orders are still considered. `projected_inventory` is the total
/// on-hand plus in-transit stock before any of the candidates.
///
/// Both output lists keep the candidates' original relative order.
Arbitration arbitrate(const std::vector<OrderDecision>& candidates, const GlobalConstraints& constraints,
                      Units projected_inventory);

}  // namespace replenish
