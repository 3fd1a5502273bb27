#include "replenish/supplier.hpp"

#include <algorithm>
#include <cmath>

namespace replenish {

void SupplierScoreWeights::validate() const {
    if (cost < 0.0 || lead < 0.0 || reliability < 0.0) throw Error("supplier weights must be >= 0");
    if (std::abs(cost + lead + reliability - 1.0) > 1e-9) throw Error("supplier weights must sum to 1");
}

double landed_cost(const SupplierOffer& offer, Units quantity, double negotiated_price) {
    if (quantity < offer.moq)
        throw Error("landed_cost: quantity " + std::to_string(quantity) + " below moq " + std::to_string(offer.moq) +
                    " for " + offer.supplier_id + "/" + offer.sku_id);
    return negotiated_price * static_cast<double>(quantity) + offer.fixed_shipping;
}

Money purchase_charge(double unit_price, Units delivered, double fixed_shipping) {
    return Money::from_currency(unit_price * static_cast<double>(delivered) + fixed_shipping);
}

double score_offer(const SupplierOffer& offer, Units quantity, double reliability, const SupplierScoreWeights& weights,
                   const ScoreNormalizers& normalizers) {
    if (normalizers.max_landed <= 0.0 || normalizers.max_lead <= 0.0)
        throw Error("score_offer: normalizers must be positive");
    const double landed = landed_cost(offer, quantity, offer.unit_cost);
    return weights.cost * (landed / normalizers.max_landed) +
           weights.lead * (static_cast<double>(offer.lead_time) / normalizers.max_lead) +
           weights.reliability * (1.0 - reliability);
}

std::vector<RankedOffer> rank_offers(std::span<const CandidateOffer> candidates, Units quantity,
                                     const SupplierScoreWeights& weights) {
    if (candidates.empty()) throw Error("rank_offers: empty candidate set");
    auto eval_qty = [&](const SupplierOffer& o) { return std::max(quantity, o.moq); };
    ScoreNormalizers norm{0.0, 0.0};
    for (const auto& c : candidates) {
        norm.max_landed = std::max(norm.max_landed, landed_cost(*c.offer, eval_qty(*c.offer), c.offer->unit_cost));
        norm.max_lead = std::max(norm.max_lead, static_cast<double>(c.offer->lead_time));
    }
    if (norm.max_landed <= 0.0) norm.max_landed = 1.0;
    std::vector<RankedOffer> ranked;
    ranked.reserve(candidates.size());
    for (const auto& c : candidates)
        ranked.push_back({c, score_offer(*c.offer, eval_qty(*c.offer), c.reliability, weights, norm)});
    std::sort(ranked.begin(), ranked.end(), [](const RankedOffer& a, const RankedOffer& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.candidate.offer->supplier_id < b.candidate.offer->supplier_id;
    });
    return ranked;
}

Allocation allocate(const ReorderProposal& proposal, std::span<const CandidateOffer> candidates,
                    const SupplierScoreWeights& weights, Period now) {
    Allocation out;
    if (proposal.quantity <= 0) return out;
    if (candidates.empty()) {
        out.shortfall = proposal.quantity;
        out.unfilled = true;
        return out;
    }
    Units remaining = proposal.quantity;
    for (const auto& r : rank_offers(candidates, proposal.quantity, weights)) {
        if (remaining <= 0) break;
        const SupplierOffer& o = *r.candidate.offer;
        Units take = std::min(remaining, o.capacity());
        if (take < o.moq) {
            // Overshoot (moq - remaining) allowed up to 25% of remaining: 4 * moq <= 5 * remaining.
            if (o.moq > o.capacity() || 4 * o.moq > 5 * remaining) continue;
            take = o.moq;
        }
        if (take <= 0) continue;
        OrderDecision d;
        d.sku_id = proposal.sku_id;
        d.supplier_id = o.supplier_id;
        d.quantity = take;
        d.negotiated_unit_price = o.unit_cost;
        d.list_unit_price = o.unit_cost;
        d.fixed_shipping = o.fixed_shipping;
        d.placed_at = now;
        d.promised_arrival = now + o.lead_time;
        d.criticality = proposal.criticality * static_cast<double>(take) / static_cast<double>(proposal.quantity);
        out.orders.push_back(std::move(d));
        remaining -= take;
    }
    out.shortfall = std::max<Units>(0, remaining);
    out.unfilled = out.orders.empty();
    return out;
}

void ReliabilityTracker::record(const SupplierOffer& offer, bool on_time_in_full) {
    auto [it, inserted] = entries_.try_emplace({offer.supplier_id, offer.sku_id});
    Entry& e = it->second;
    if (inserted) e.rate = offer.reliability;
    e.rate = (1.0 - weight_) * e.rate + weight_ * (on_time_in_full ? 1.0 : 0.0);
    ++e.count;
}

double ReliabilityTracker::effective(const SupplierOffer& offer) const {
    auto it = entries_.find({offer.supplier_id, offer.sku_id});
    if (it == entries_.end() || it->second.count < min_observations_) return offer.reliability;
    return it->second.rate;
}

int ReliabilityTracker::observations(const SupplierOffer& offer) const {
    auto it = entries_.find({offer.supplier_id, offer.sku_id});
    return it == entries_.end() ? 0 : it->second.count;
}

}  // namespace replenish
