#include "replenish/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace replenish {

namespace {

// Tolerates products such as 0.29 * 100 landing just below an integer.
constexpr double kFloorSlack = 1e-9;

Money value_of(Units units, double unit_cost) {
    return Money::from_currency(static_cast<double>(units) * unit_cost);
}

}  // namespace

const char* to_string(Category c) {
    switch (c) {
        case Category::grocery: return "grocery";
        case Category::clothing: return "clothing";
        case Category::cosmetics: return "cosmetics";
        case Category::frozen: return "frozen";
        case Category::other: return "other";
    }
    return "other";
}

std::optional<Category> parse_category(const std::string& name) {
    for (auto c : {Category::grocery, Category::clothing, Category::cosmetics, Category::frozen, Category::other})
        if (name == to_string(c)) return c;
    return std::nullopt;
}

void Sku::validate() const {
    if (id.empty()) throw Error("sku: empty id");
    if (holding_cost < 0.0) throw Error("sku " + id + ": holding_cost must be >= 0");
    if (stockout_penalty < 0.0) throw Error("sku " + id + ": stockout_penalty must be >= 0");
    if (decay_fraction < 0.0 || decay_fraction > 1.0) throw Error("sku " + id + ": decay_fraction must be in [0,1]");
    if (shelf_life && *shelf_life < 1) throw Error("sku " + id + ": shelf_life must be >= 1");
}

Units SupplierOffer::capacity() const {
    return capacity_per_order.value_or(std::numeric_limits<Units>::max());
}

void SupplierOffer::validate() const {
    const std::string who = "offer " + supplier_id + "/" + sku_id;
    if (!(unit_cost > 0.0)) throw Error(who + ": unit_cost must be > 0");
    if (lead_time < 1) throw Error(who + ": lead_time must be >= 1");
    if (moq < 0) throw Error(who + ": moq must be >= 0");
    if (capacity_per_order && *capacity_per_order < std::max<Units>(moq, 1))
        throw Error(who + ": capacity_per_order below moq");
    if (reliability < 0.0 || reliability > 1.0) throw Error(who + ": reliability must be in [0,1]");
    if (fixed_shipping < 0.0) throw Error(who + ": fixed_shipping must be >= 0");
    if (max_discount < 0.0 || max_discount >= 1.0) throw Error(who + ": max_discount must be in [0,1)");
}

CostAccounts& CostAccounts::operator+=(const CostAccounts& o) {
    purchase += o.purchase;
    holding += o.holding;
    stockout += o.stockout;
    spoilage += o.spoilage;
    return *this;
}

SkuLedger::SkuLedger(Sku sku) : sku_(std::move(sku)) {}

Units SkuLedger::on_hand() const {
    return std::accumulate(batches_.begin(), batches_.end(), Units{0},
                           [](Units acc, const Batch& b) { return acc + b.quantity; });
}

Units SkuLedger::pipeline_quantity() const {
    return std::accumulate(pipeline_.begin(), pipeline_.end(), Units{0},
                           [](Units acc, const Shipment& s) { return acc + s.quantity; });
}

Money SkuLedger::inventory_value() const {
    Money total;
    for (const auto& b : batches_) total += value_of(b.quantity, b.unit_cost_paid);
    return total;
}

void SkuLedger::add_opening_stock(Batch batch) {
    if (batch.quantity <= 0) return;
    // Keep oldest-first ordering.
    auto it = std::find_if(batches_.begin(), batches_.end(), [&](const Batch& b) { return b.age < batch.age; });
    batches_.insert(it, batch);
}

void SkuLedger::schedule_shipment(Shipment shipment, Money purchase_cost) {
    pending_.purchase += purchase_cost;
    if (shipment.quantity > 0) pipeline_.push_back(shipment);
}

Units SkuLedger::receive_shipments(Period period) {
    Units received = 0;
    auto arrived = std::stable_partition(pipeline_.begin(), pipeline_.end(),
                                         [&](const Shipment& s) { return s.arrival_period != period; });
    for (auto it = arrived; it != pipeline_.end(); ++it) {
        batches_.push_back(Batch{it->quantity, 0, it->unit_cost});
        received += it->quantity;
    }
    pipeline_.erase(arrived, pipeline_.end());
    counters_.received += received;
    return received;
}

FulfillResult SkuLedger::fulfill_demand(Units demand) {
    FulfillResult result;
    Units remaining = demand;
    while (remaining > 0 && !batches_.empty()) {
        Batch& oldest = batches_.front();
        const Units take = std::min(remaining, oldest.quantity);
        oldest.quantity -= take;
        remaining -= take;
        result.sales += take;
        cogs_ += value_of(take, oldest.unit_cost_paid);
        if (oldest.quantity == 0) batches_.pop_front();
    }
    result.stockout_units = remaining;
    counters_.demand += demand;
    counters_.sales += result.sales;
    counters_.stockout_units += result.stockout_units;
    if (remaining > 0) pending_.stockout += value_of(remaining, sku_.stockout_penalty);
    return result;
}

Units SkuLedger::age_and_spoil() {
    Units spoiled = 0;
    Money cost;
    for (auto& b : batches_) ++b.age;
    if (sku_.shelf_life) {
        const int limit = *sku_.shelf_life;
        while (!batches_.empty() && batches_.front().age > limit) {
            spoiled += batches_.front().quantity;
            cost += value_of(batches_.front().quantity, batches_.front().unit_cost_paid);
            batches_.pop_front();
        }
        // Batches are age-sorted, but opening stock may interleave; sweep the rest.
        for (auto it = batches_.begin(); it != batches_.end();) {
            if (it->age > limit) {
                spoiled += it->quantity;
                cost += value_of(it->quantity, it->unit_cost_paid);
                it = batches_.erase(it);
            } else {
                ++it;
            }
        }
    }
    if (sku_.decay_fraction > 0.0) {
        Units decay = static_cast<Units>(std::floor(sku_.decay_fraction * static_cast<double>(on_hand()) + kFloorSlack));
        while (decay > 0 && !batches_.empty()) {
            Batch& oldest = batches_.front();
            const Units take = std::min(decay, oldest.quantity);
            oldest.quantity -= take;
            decay -= take;
            spoiled += take;
            cost += value_of(take, oldest.unit_cost_paid);
            if (oldest.quantity == 0) batches_.pop_front();
        }
    }
    counters_.spoiled_units += spoiled;
    pending_.spoilage += cost;
    return spoiled;
}

Money SkuLedger::accrue_period_costs() {
    pending_.holding += value_of(on_hand(), sku_.holding_cost);
    const Money period_cost = pending_.total();
    accounts_ += pending_;
    pending_ = CostAccounts{};
    return period_cost;
}

SkuLedger& InventoryLedger::add(Sku sku) {
    auto id = sku.id;
    auto [it, inserted] = ledgers_.try_emplace(id, std::move(sku));
    if (!inserted) throw Error("duplicate sku in ledger: " + id);
    return it->second;
}

SkuLedger& InventoryLedger::at(const std::string& sku_id) {
    auto it = ledgers_.find(sku_id);
    if (it == ledgers_.end()) throw Error("unknown sku: " + sku_id);
    return it->second;
}

const SkuLedger& InventoryLedger::at(const std::string& sku_id) const {
    auto it = ledgers_.find(sku_id);
    if (it == ledgers_.end()) throw Error("unknown sku: " + sku_id);
    return it->second;
}

}  // namespace replenish
