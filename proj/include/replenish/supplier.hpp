#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "replenish/core.hpp"
#include "replenish/policies.hpp"

namespace replenish {

struct SupplierScoreWeights {
    double cost = 0.5;
    double lead = 0.2;
    double reliability = 0.3;

    void validate() const;
};

/// negotiated_price * quantity + fixed_shipping. Throws Error when quantity < moq.
double landed_cost(const SupplierOffer& offer, Units quantity, double negotiated_price);

/// Exact purchase charge booked for a delivery.
Money purchase_charge(double unit_price, Units delivered, double fixed_shipping);

struct ScoreNormalizers {
    double max_landed = 1.0;
    double max_lead = 1.0;
};

/// Weighted, normalized score; lower is better.
double score_offer(const SupplierOffer& offer, Units quantity, double reliability, const SupplierScoreWeights& weights,
                   const ScoreNormalizers& normalizers);

/// An offer together with the reliability the selector currently believes.
struct CandidateOffer {
    const SupplierOffer* offer = nullptr;
    double reliability = 1.0;
};

struct RankedOffer {
    CandidateOffer candidate;
    double score = 0.0;
};

/// Scores every candidate at the proposal quantity (raised to each offer's
/// MOQ) and sorts ascending by score, then supplier id. Throws on empty input.
std::vector<RankedOffer> rank_offers(std::span<const CandidateOffer> candidates, Units quantity,
                                     const SupplierScoreWeights& weights);

struct Allocation {
    std::vector<OrderDecision> orders;
    Units shortfall = 0;  // proposal quantity not covered
    bool unfilled = false;
};

/// Greedy split across ranked offers. An offer whose MOQ exceeds the
/// remaining need is used only when rounding up overshoots by at most 25%.
/// Orders carry list prices; negotiation happens later.
Allocation allocate(const ReorderProposal& proposal, std::span<const CandidateOffer> candidates,
                    const SupplierScoreWeights& weights, Period now);

/// Exponentially weighted on-time-in-full rate per (supplier, sku). The
/// learned rate replaces the catalogue reliability once enough orders have
/// been observed.
class ReliabilityTracker {
public:
    explicit ReliabilityTracker(double weight = 0.1, int min_observations = 10)
        : weight_(weight), min_observations_(min_observations) {}

    void record(const SupplierOffer& offer, bool on_time_in_full);
    double effective(const SupplierOffer& offer) const;
    int observations(const SupplierOffer& offer) const;

private:
    struct Entry {
        double rate = 1.0;
        int count = 0;
    };
    double weight_;
    int min_observations_;
    std::map<std::pair<std::string, std::string>, Entry> entries_;
};

}  // namespace replenish
