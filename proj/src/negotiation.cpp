#include "replenish/negotiation.hpp"

#include <algorithm>

namespace replenish {

void NegotiationParams::validate() const {
    auto fraction = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (max_rounds < 0) throw Error("negotiation: max_rounds must be >= 0");
    if (!fraction(buyer_opening_discount)) throw Error("negotiation: buyer_opening_discount must be in [0,1]");
    if (!fraction(buyer_concession_step)) throw Error("negotiation: buyer_concession_step must be in [0,1]");
    if (!fraction(supplier_concession_rate)) throw Error("negotiation: supplier_concession_rate must be in [0,1]");
    if (!(quantity_ref > 0.0)) throw Error("negotiation: quantity_ref must be > 0");
    if (!fraction(jitter)) throw Error("negotiation: jitter must be in [0,1]");
}

NegotiationOutcome negotiate(const SupplierOffer& offer, Units quantity, const NegotiationParams& params, Rng stream) {
    if (quantity < offer.moq) throw Error("negotiate: quantity below moq for " + offer.supplier_id + "/" + offer.sku_id);
    const double list = offer.unit_cost;
    const double tier = std::min(1.0, static_cast<double>(quantity) / params.quantity_ref);
    const double floor = list * (1.0 - offer.max_discount * tier);
    NegotiationOutcome out{list, floor, 0, false};

    double ask = list;
    for (int k = 1; k <= params.max_rounds; ++k) {
        const double bid =
            std::min(list, list * (1.0 - params.buyer_opening_discount) + (k - 1) * params.buyer_concession_step * list);
        double rate = params.supplier_concession_rate;
        if (params.jitter > 0.0) rate = std::clamp(rate + params.jitter * (2.0 * stream.uniform() - 1.0), 0.0, 1.0);
        ask -= rate * (ask - floor);
        out.rounds = k;
        if (ask <= bid) {
            out.unit_price = std::clamp(0.5 * (ask + bid), floor, list);
            out.agreed = true;
            return out;
        }
    }
    return out;
}

}  // namespace replenish
