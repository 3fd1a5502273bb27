#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "replenish/money.hpp"

namespace replenish {

using Units = std::int64_t;
using Period = int;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Category { grocery, clothing, cosmetics, frozen, other };

const char* to_string(Category c);
std::optional<Category> parse_category(const std::string& name);

struct Sku {
    std::string id;
    Category category = Category::other;
    double holding_cost = 0.0;      // currency / unit / period
    double stockout_penalty = 0.0;  // currency / unit of lost demand
    double decay_fraction = 0.0;    // share of on-hand lost per period
    std::optional<int> shelf_life;  // periods; nullopt for durables
    double unit_margin = 0.0;       // currency / unit sold, used by trend ROI

    bool perishable() const { return decay_fraction > 0.0 || shelf_life.has_value(); }
    /// Throws Error on violated invariants.
    void validate() const;
};

struct SupplierOffer {
    std::string supplier_id;
    std::string sku_id;
    double unit_cost = 0.0;
    int lead_time = 1;
    Units moq = 0;
    std::optional<Units> capacity_per_order;  // nullopt = unbounded
    double reliability = 1.0;
    double fixed_shipping = 0.0;
    double max_discount = 0.0;

    double floor_price() const { return unit_cost * (1.0 - max_discount); }
    Units capacity() const;
    void validate() const;
};

struct Batch {
    Units quantity = 0;
    int age = 0;
    double unit_cost_paid = 0.0;
};

struct Shipment {
    Period arrival_period = 0;
    Units quantity = 0;
    double unit_cost = 0.0;
};

struct OrderDecision {
    std::string sku_id;
    std::string supplier_id;
    Units quantity = 0;
    double negotiated_unit_price = 0.0;
    double list_unit_price = 0.0;
    double fixed_shipping = 0.0;
    Period placed_at = 0;
    Period promised_arrival = 0;
    double criticality = 0.0;

    /// Landed cost at the negotiated price for the ordered quantity.
    double landed_cost() const { return negotiated_unit_price * static_cast<double>(quantity) + fixed_shipping; }
};

struct CostAccounts {
    Money purchase;
    Money holding;
    Money stockout;
    Money spoilage;

    Money total() const { return purchase + holding + stockout + spoilage; }
    CostAccounts& operator+=(const CostAccounts& o);
};

struct UnitCounters {
    Units demand = 0;
    Units sales = 0;
    Units stockout_units = 0;
    Units spoiled_units = 0;
    Units received = 0;
};

struct FulfillResult {
    Units sales = 0;
    Units stockout_units = 0;
};

/// Per-SKU stock book: FIFO batches, in-transit pipeline and cost accounts.
///
/// Costs incurred during a period accumulate in a pending bucket and are
/// moved into the cumulative accounts by accrue_period_costs(), which must be
/// called exactly once at the end of every period.
class SkuLedger {
public:
    explicit SkuLedger(Sku sku);

    const Sku& sku() const { return sku_; }
    Units on_hand() const;
    Units pipeline_quantity() const;
    Units position() const { return on_hand() + pipeline_quantity(); }
    const std::deque<Batch>& batches() const { return batches_; }
    const std::vector<Shipment>& pipeline() const { return pipeline_; }
    const CostAccounts& accounts() const { return accounts_; }
    const UnitCounters& counters() const { return counters_; }
    /// Cost of goods sold (FIFO, at batch purchase price), cumulative.
    Money cogs() const { return cogs_; }
    /// On-hand valued at purchase price.
    Money inventory_value() const;

    /// Seeds opening stock; not a purchase.
    void add_opening_stock(Batch batch);
    /// Books a committed order: the pipeline entry and its purchase cost.
    void schedule_shipment(Shipment shipment, Money purchase_cost);

    Units receive_shipments(Period period);
    FulfillResult fulfill_demand(Units demand);
    Units age_and_spoil();
    Money accrue_period_costs();

private:
    Sku sku_;
    std::deque<Batch> batches_;  // oldest first
    std::vector<Shipment> pipeline_;
    CostAccounts accounts_;
    CostAccounts pending_;
    UnitCounters counters_;
    Money cogs_;
};

/// All SKU ledgers of one run, ordered by SKU id.
class InventoryLedger {
public:
    SkuLedger& add(Sku sku);
    SkuLedger& at(const std::string& sku_id);
    const SkuLedger& at(const std::string& sku_id) const;
    bool contains(const std::string& sku_id) const { return ledgers_.contains(sku_id); }
    auto begin() { return ledgers_.begin(); }
    auto end() { return ledgers_.end(); }
    auto begin() const { return ledgers_.begin(); }
    auto end() const { return ledgers_.end(); }
    std::size_t size() const { return ledgers_.size(); }

private:
    std::map<std::string, SkuLedger> ledgers_;
};

}  // namespace replenish
