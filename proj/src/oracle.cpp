#include "replenish/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "replenish/supplier.hpp"

namespace replenish {

namespace {

// Orders of a partial plan, newest first; children share their parent's tail.
struct Trail {
    PlannedOrder order;
    std::shared_ptr<const Trail> prev;
};

struct Node {
    SkuLedger ledger;
    Money cost;
    std::shared_ptr<const Trail> orders;
    Units unavoidable = 0;
    std::string key;
};

Units available_at(const SkuLedger& ledger, Period period) {
    Units total = ledger.on_hand();
    for (const auto& s : ledger.pipeline())
        if (s.arrival_period == period) total += s.quantity;
    return total;
}

struct Advance {
    Period stop = 0;
    Money cost;
};

// Runs periods [from, horizon) with no new orders, stopping before the first
// period whose demand cannot be met in full.
Advance advance(SkuLedger& ledger, Period from, int horizon, std::span<const Units> demand) {
    Advance out{horizon, Money{}};
    for (Period t = from; t < horizon; ++t) {
        const Units d = demand[static_cast<std::size_t>(t)];
        if (available_at(ledger, t) < d) {
            out.stop = t;
            return out;
        }
        ledger.receive_shipments(t);
        ledger.fulfill_demand(d);
        ledger.age_and_spoil();
        out.cost += ledger.accrue_period_costs();
    }
    return out;
}

std::string state_key(const SkuLedger& ledger) {
    std::string key;
    key.reserve(64);
    for (const auto& b : ledger.batches()) {
        key += std::to_string(b.quantity);
        key += '@';
        key += std::to_string(b.age);
        key += ':';
        key += std::to_string(Money::from_currency(b.unit_cost_paid * 1e4).cents());
        key += ';';
    }
    key += '|';
    for (const auto& s : ledger.pipeline()) {
        key += std::to_string(s.quantity);
        key += '>';
        key += std::to_string(s.arrival_period);
        key += ';';
    }
    return key;
}

bool has_order(const Node& node, const std::string& supplier, Period placed) {
    for (const Trail* t = node.orders.get(); t; t = t->prev.get())
        if (t->order.order.supplier_id == supplier && t->order.order.placed_at == placed) return true;
    return false;
}

class Planner {
public:
    Planner(const OracleProblem& problem, const OracleConfig& config) : p_(problem), cfg_(config) {
        offers_ = p_.offers;
        std::sort(offers_.begin(), offers_.end(),
                  [](const SupplierOffer& a, const SupplierOffer& b) { return a.supplier_id < b.supplier_id; });
    }

    OraclePlan run() {
        Node root{p_.ledger, Money{}, {}, 0, {}};
        root.ledger.accrue_period_costs();  // current period is sunk
        push(std::move(root), p_.now + 1);

        while (!frontier_.empty()) {
            auto first = frontier_.begin();
            const Period epoch = first->first;
            std::vector<Node> nodes = std::move(first->second);
            frontier_.erase(first);
            prune(nodes);
            if (epoch >= p_.horizon) return finish(nodes.front());
            for (auto& n : nodes) expand(n, epoch);
        }
        return {};
    }

private:
    void push(Node node, Period from) {
        const Advance adv = advance(node.ledger, from, p_.horizon, p_.demand);
        node.cost += adv.cost;
        node.key = state_key(node.ledger);
        frontier_[adv.stop].push_back(std::move(node));
    }

    void prune(std::vector<Node>& nodes) const {
        std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
            if (a.key != b.key) return a.key < b.key;
            return a.cost < b.cost;
        });
        nodes.erase(std::unique(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.key == b.key; }),
                    nodes.end());
        std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
            if (a.cost != b.cost) return a.cost < b.cost;
            return a.key < b.key;
        });
        if (nodes.size() > static_cast<std::size_t>(cfg_.max_states_per_epoch))
            nodes.erase(nodes.begin() + cfg_.max_states_per_epoch, nodes.end());
    }

    OraclePlan finish(const Node& best) const {
        OraclePlan plan;
        for (const Trail* t = best.orders.get(); t; t = t->prev.get()) plan.orders.push_back(t->order);
        std::sort(plan.orders.begin(), plan.orders.end(), [](const PlannedOrder& a, const PlannedOrder& b) {
            if (a.order.placed_at != b.order.placed_at) return a.order.placed_at < b.order.placed_at;
            return a.order.supplier_id < b.order.supplier_id;
        });
        plan.cost = best.cost;
        plan.unavoidable_stockout_units = best.unavoidable;
        return plan;
    }

    void expand(const Node& node, Period epoch) {
        bool reachable = false;
        for (const auto& offer : offers_) reachable |= expand_offer(node, epoch, offer);
        if (reachable) return;
        // Nobody can land stock in time: serve what is there and move on.
        Node child = node;
        child.ledger.receive_shipments(epoch);
        const auto result = child.ledger.fulfill_demand(p_.demand[static_cast<std::size_t>(epoch)]);
        child.ledger.age_and_spoil();
        child.cost += child.ledger.accrue_period_costs();
        child.unavoidable += result.stockout_units;
        push(std::move(child), epoch + 1);
    }

    bool expand_offer(const Node& node, Period epoch, const SupplierOffer& offer) {
        OrderDecision probe;
        probe.sku_id = offer.sku_id;
        probe.supplier_id = offer.supplier_id;
        probe.quantity = std::max<Units>(offer.moq, 1);
        probe.list_unit_price = offer.unit_cost;
        probe.negotiated_unit_price = offer.unit_cost;
        probe.fixed_shipping = offer.fixed_shipping;

        // Disruption draws are keyed by placement date, so each date that lands
        // on this epoch is its own option (one may be short-shipped, another not).
        bool reachable = false;
        const Period nominal = epoch - offer.lead_time;
        for (Period placed = nominal; placed >= p_.now && placed >= nominal - cfg_.max_delay_search; --placed) {
            if (has_order(node, offer.supplier_id, placed)) continue;
            probe.placed_at = placed;
            probe.promised_arrival = placed + offer.lead_time;
            const auto d = perturb_order(probe, offer, p_.disruption, order_stream(p_.master_seed, probe, 0));
            if (d.arrival_period == epoch) {
                reachable = true;
                search_lots(node, epoch, offer, probe, d);
            }
            if (!p_.disruption.enabled) break;
        }
        return reachable;
    }

    void search_lots(const Node& node, Period epoch, const SupplierOffer& offer, const OrderDecision& probe,
                     const RealizedDelivery& delivery) {
        const bool shorted = delivery.short_shipped;
        const double fill = p_.disruption.fill_fraction;
        if (shorted && fill <= 0.0) return;
        auto delivered = [&](Units q) {
            return shorted ? static_cast<Units>(std::floor(fill * static_cast<double>(q) + 1e-9)) : q;
        };
        auto order_for = [&](Units extra_delivered) {
            return shorted ? static_cast<Units>(std::ceil(static_cast<double>(extra_delivered) / fill)) : extra_delivered;
        };
        const Rng neg = negotiation_stream(p_.master_seed, probe, 0);
        std::vector<double>& memo = price_memo_[{offer.supplier_id, probe.placed_at}];
        auto price = [&](Units q) {
            if (!p_.negotiation) return offer.unit_cost;
            if (q >= kMemoLimit) return negotiate(offer, q, *p_.negotiation, neg).unit_price;
            const auto i = static_cast<std::size_t>(q);
            if (memo.size() <= i) memo.resize(i + 1, -1.0);
            if (memo[i] < 0.0) memo[i] = negotiate(offer, q, *p_.negotiation, neg).unit_price;
            return memo[i];
        };
        auto charge = [&](Units q) { return purchase_charge(price(q), delivered(q), offer.fixed_shipping); };

        auto emit = [&](Units q, Period& stop_out, Units& avail_at_stop) {
            Node child = node;
            const double unit_price = price(q);
            const Units got = delivered(q);
            child.ledger.schedule_shipment(Shipment{epoch, got, unit_price}, Money{});
            child.cost += purchase_charge(unit_price, got, offer.fixed_shipping);
            PlannedOrder planned;
            planned.order = probe;
            planned.order.quantity = q;
            planned.order.negotiated_unit_price = unit_price;
            planned.delivery = delivery;
            planned.delivery.delivered = got;
            child.orders = std::make_shared<const Trail>(Trail{std::move(planned), child.orders});
            const Advance adv = advance(child.ledger, epoch, p_.horizon, p_.demand);
            child.cost += adv.cost;
            child.key = state_key(child.ledger);
            stop_out = adv.stop;
            avail_at_stop = adv.stop < p_.horizon ? available_at(child.ledger, adv.stop) : 0;
            return child;
        };

        const Units cap = offer.capacity();
        const Units lot_min = std::max<Units>(offer.moq, 1);
        Units q = std::max(lot_min, order_for(p_.demand[static_cast<std::size_t>(epoch)] - available_at(node.ledger, epoch)));
        Period last_stop = epoch;
        Units last_avail = -1;
        std::vector<Units> breakpoints;
        while (q <= cap) {
            Period stop = 0;
            Units avail = 0;
            Node child = emit(q, stop, avail);
            if (stop == last_stop && avail <= last_avail && stop != epoch) break;  // more stock no longer helps
            if (stop > last_stop) {
                breakpoints.push_back(q);
                frontier_[stop].push_back(std::move(child));
            }
            if (stop >= p_.horizon || stop - epoch >= cfg_.max_cover_periods) break;
            if (p_.ledger.sku().shelf_life && stop - epoch > *p_.ledger.sku().shelf_life) break;
            const Units deficit = p_.demand[static_cast<std::size_t>(stop)] - avail;
            if (stop == epoch && deficit <= 0) break;
            last_stop = std::max(last_stop, stop);
            last_avail = avail;
            q += std::max<Units>(1, order_for(deficit));
        }

        // Between breakpoints, extra units only add carrying cost unless the
        // negotiated tier makes the larger lot strictly cheaper to buy.
        if (p_.negotiation && offer.max_discount > 0.0) {
            for (std::size_t i = 0; i < breakpoints.size(); ++i) {
                const Units lo = breakpoints[i];
                // Past the last breakpoint the price keeps falling until q_ref.
                const Units hi = i + 1 < breakpoints.size()
                                     ? breakpoints[i + 1]
                                     : static_cast<Units>(std::ceil(p_.negotiation->quantity_ref)) + 1;
                if (static_cast<double>(lo) >= p_.negotiation->quantity_ref) break;
                Money best = charge(lo);
                for (Units x = lo + 1; x < hi && x <= cap; ++x) {
                    const Money c = charge(x);
                    if (c < best) {
                        best = c;
                        Period stop = 0;
                        Units avail = 0;
                        Node child = emit(x, stop, avail);
                        frontier_[stop].push_back(std::move(child));
                    }
                }
            }
        }
    }

    const OracleProblem& p_;
    OracleConfig cfg_;
    std::vector<SupplierOffer> offers_;
    std::map<Period, std::vector<Node>> frontier_;
    // Negotiated price by lot size for each (supplier, placement date).
    static constexpr Units kMemoLimit = 4096;
    std::map<std::pair<std::string, Period>, std::vector<double>> price_memo_;
};

// Full enumeration with state merging. Objective is lexicographic: fewest
// lost units, then lowest cost.
class ExactPlanner {
public:
    explicit ExactPlanner(const OracleProblem& problem) : p_(problem) {
        offers_ = p_.offers;
        std::sort(offers_.begin(), offers_.end(),
                  [](const SupplierOffer& a, const SupplierOffer& b) { return a.supplier_id < b.supplier_id; });
    }

    // Largest lot worth considering: all remaining demand grossed up for a
    // short shipment, the MOQ, and the quantity where negotiated prices stop
    // falling.
    static Units max_lot(const OracleProblem& p, const SupplierOffer& offer) {
        Units total = 0;
        for (Period t = p.now + 1; t < p.horizon; ++t) total += p.demand[static_cast<std::size_t>(t)];
        const double fill = p.disruption.enabled ? p.disruption.fill_fraction : 1.0;
        Units q = fill > 0.0 ? static_cast<Units>(std::ceil(static_cast<double>(total) / fill)) : 0;
        q = std::max(q, offer.moq);
        if (p.negotiation && offer.max_discount > 0.0)
            q = std::max(q, static_cast<Units>(std::ceil(p.negotiation->quantity_ref)));
        return std::min(q, offer.capacity());
    }

    static double plan_count(const OracleProblem& p) {
        double count = 1.0;
        for (const auto& offer : p.offers) {
            const Units lot_min = std::max<Units>(offer.moq, 1);
            const double choices = 1.0 + static_cast<double>(std::max<Units>(0, max_lot(p, offer) - lot_min + 1));
            for (Period t = p.now; t + offer.lead_time < p.horizon; ++t) {
                count *= choices;
                if (count > 1e18) return count;
            }
        }
        return count;
    }

    OraclePlan run() {
        struct State {
            SkuLedger ledger;
            Units lost = 0;
            Money cost;
            std::shared_ptr<const Trail> orders;
        };
        auto better = [](const State& a, const State& b) {
            return a.lost != b.lost ? a.lost < b.lost : a.cost < b.cost;
        };
        using Layer = std::map<std::string, State>;
        auto merge = [&](Layer& layer, State s) {
            auto key = state_key(s.ledger);
            auto it = layer.find(key);
            if (it == layer.end())
                layer.emplace(std::move(key), std::move(s));
            else if (better(s, it->second))
                it->second = std::move(s);
        };

        Layer layer;
        {
            State root{p_.ledger, 0, Money{}, {}};
            root.ledger.accrue_period_costs();  // current period is sunk
            merge(layer, std::move(root));
        }
        for (Period t = p_.now; t + 1 < p_.horizon; ++t) {
            for (const auto& offer : offers_) {
                if (t + offer.lead_time >= p_.horizon) continue;
                OrderDecision o;
                o.sku_id = offer.sku_id;
                o.supplier_id = offer.supplier_id;
                o.placed_at = t;
                o.promised_arrival = t + offer.lead_time;
                o.list_unit_price = offer.unit_cost;
                o.fixed_shipping = offer.fixed_shipping;
                const auto base = perturb_order(o, offer, p_.disruption, order_stream(p_.master_seed, o, 0));
                const Rng neg = negotiation_stream(p_.master_seed, o, 0);
                const Units hi = max_lot(p_, offer);

                Layer next;
                for (auto& [key, s] : layer) {
                    for (Units q = std::max<Units>(1, offer.moq); q <= hi; ++q) {
                        OrderDecision placed = o;
                        placed.quantity = q;
                        placed.negotiated_unit_price =
                            p_.negotiation ? negotiate(offer, q, *p_.negotiation, neg).unit_price : offer.unit_cost;
                        RealizedDelivery d = base;
                        d.delivered = base.short_shipped ? static_cast<Units>(std::floor(
                                                               p_.disruption.fill_fraction * static_cast<double>(q) + 1e-9))
                                                         : q;
                        State child = s;
                        child.ledger.schedule_shipment({d.arrival_period, d.delivered, placed.negotiated_unit_price},
                                                       Money{});
                        child.cost +=
                            purchase_charge(placed.negotiated_unit_price, d.delivered, placed.fixed_shipping);
                        child.orders = std::make_shared<const Trail>(Trail{{placed, d}, child.orders});
                        merge(next, std::move(child));
                    }
                    merge(next, std::move(s));  // no order
                }
                layer = std::move(next);
            }
            Layer next;
            for (auto& [key, s] : layer) {
                s.ledger.receive_shipments(t + 1);
                s.lost += s.ledger.fulfill_demand(p_.demand[static_cast<std::size_t>(t + 1)]).stockout_units;
                s.ledger.age_and_spoil();
                s.cost += s.ledger.accrue_period_costs();
                merge(next, std::move(s));
            }
            layer = std::move(next);
        }

        const State* best = nullptr;
        for (const auto& [key, s] : layer)
            if (!best || better(s, *best)) best = &s;
        OraclePlan plan;
        for (const Trail* tr = best->orders.get(); tr; tr = tr->prev.get()) plan.orders.push_back(tr->order);
        std::sort(plan.orders.begin(), plan.orders.end(), [](const PlannedOrder& a, const PlannedOrder& b) {
            if (a.order.placed_at != b.order.placed_at) return a.order.placed_at < b.order.placed_at;
            return a.order.supplier_id < b.order.supplier_id;
        });
        plan.cost = best->cost;
        plan.unavoidable_stockout_units = best->lost;
        return plan;
    }

private:
    const OracleProblem& p_;
    std::vector<SupplierOffer> offers_;
};

}  // namespace

OraclePlan plan_oracle(const OracleProblem& problem, const OracleConfig& config) {
    if (problem.horizon > static_cast<int>(problem.demand.size())) throw Error("plan_oracle: demand trace shorter than horizon");
    if (ExactPlanner::plan_count(problem) <= config.exact_plan_limit) return ExactPlanner(problem).run();
    return Planner(problem, config).run();
}

Rng negotiation_stream(std::uint64_t master_seed, const OrderDecision& order, int ordinal) {
    return Rng::stream(master_seed, "negotiation/" + order.sku_id + "/" + order.supplier_id + "/" +
                                        std::to_string(order.placed_at) + "/" + std::to_string(ordinal));
}

ReorderProposal decide_oracle(const SkuState& state, const OraclePlan& plan) {
    ReorderProposal out{state.sku->id, 0, state.period, 0.0, Rationale::none, false};
    for (const auto& p : plan.orders) {
        if (p.order.placed_at != state.period) continue;
        out.quantity += p.order.quantity;
        out.needed_by = p.delivery.arrival_period;
        out.rationale = Rationale::oracle_plan;
        out.criticality += state.sku->stockout_penalty * static_cast<double>(p.order.quantity);
    }
    return out;
}

}  // namespace replenish
