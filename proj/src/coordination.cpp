#include "replenish/coordination.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace replenish {

void GlobalConstraints::validate() const {
    if (budget_per_period && *budget_per_period < Money{}) throw Error("constraints: budget must be >= 0");
    if (warehouse_capacity && *warehouse_capacity < 0) throw Error("constraints: warehouse_capacity must be >= 0");
    if (max_orders_per_period && *max_orders_per_period < 0)
        throw Error("constraints: max_orders_per_period must be >= 0");
}

Arbitration arbitrate(const std::vector<OrderDecision>& candidates, const GlobalConstraints& constraints,
                      Units projected_inventory) {
    auto density = [](const OrderDecision& o) {
        const double cost = o.landed_cost();
        return cost > 0.0 ? o.criticality / cost : std::numeric_limits<double>::infinity();
    };
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = candidates[a];
        const auto& y = candidates[b];
        const double dx = density(x);
        const double dy = density(y);
        if (dx != dy) return dx > dy;
        if (x.sku_id != y.sku_id) return x.sku_id < y.sku_id;
        return x.supplier_id < y.supplier_id;
    });

    std::vector<bool> funded(candidates.size(), false);
    Money spent;
    Units inventory = projected_inventory;
    int count = 0;
    for (std::size_t i : order) {
        const auto& o = candidates[i];
        const Money cost = Money::from_currency(o.landed_cost());
        if (constraints.budget_per_period && spent + cost > *constraints.budget_per_period) continue;
        if (constraints.warehouse_capacity && inventory + o.quantity > *constraints.warehouse_capacity) continue;
        if (constraints.max_orders_per_period && count >= *constraints.max_orders_per_period) continue;
        funded[i] = true;
        spent += cost;
        inventory += o.quantity;
        ++count;
    }

    Arbitration out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        (funded[i] ? out.funded : out.deferred).push_back(candidates[i]);
    return out;
}

}  // namespace replenish
