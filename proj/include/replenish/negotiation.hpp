#pragma once

#include "replenish/core.hpp"
#include "replenish/rng.hpp"

namespace replenish {

struct NegotiationParams {
    int max_rounds = 5;
    double buyer_opening_discount = 0.15;
    double buyer_concession_step = 0.01;   // fraction of list price per round
    double supplier_concession_rate = 0.5; // fraction of (ask - floor) per round
    double quantity_ref = 200.0;           // quantity at which the full discount is available
    double jitter = 0.0;                   // +/- perturbation of the concession rate; 0 = off

    void validate() const;
};

struct NegotiationOutcome {
    double unit_price = 0.0;
    double floor_price = 0.0;
    int rounds = 0;
    bool agreed = false;  // false: no crossing, list price paid
};

/// Alternating offers on unit price.
///
/// Round k = 1..R: the buyer bids c(1 - opening) + (k-1) step c (capped at c);
/// the supplier then asks a_k = a_{k-1} - rate (a_{k-1} - f), a_0 = c, with
/// floor f = c (1 - max_discount min(1, q / q_ref)). The first round with
/// a_k <= bid_k settles at their midpoint. Without a crossing the list price
/// c is paid. The result always lies in [f, c].
NegotiationOutcome negotiate(const SupplierOffer& offer, Units quantity, const NegotiationParams& params, Rng stream);

}  // namespace replenish
