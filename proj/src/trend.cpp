#include "replenish/trend.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace replenish {

double least_squares_slope(std::span<const double> ys) {
    const auto n = static_cast<double>(ys.size());
    if (ys.size() < 2) return 0.0;
    const double x_mean = (n - 1.0) / 2.0;
    const double y_mean = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxy += dx * (ys[i] - y_mean);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

double normalized_slope(std::span<const double> volume, int window) {
    if (window < 1 || volume.size() < static_cast<std::size_t>(window))
        throw Error("trend: series shorter than window");
    const auto tail = volume.last(static_cast<std::size_t>(window));
    const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(window);
    if (mean <= 0.0) return 0.0;
    return std::max(0.0, least_squares_slope(tail) / mean);
}

double trend_score(std::span<const double> volume, double sentiment, int window, const TrendScoreParams& params) {
    const double slope_term = std::min(1.0, normalized_slope(volume, window) / params.slope_ref);
    return params.slope_weight * slope_term + params.sentiment_weight * (std::clamp(sentiment, -1.0, 1.0) + 1.0) / 2.0;
}

double trend_score(const TrendSignal& signal, const TrendScoreParams& params) {
    return trend_score(signal.volume, signal.sentiment, signal.window, params);
}

const char* to_string(GateDecision d) {
    switch (d) {
        case GateDecision::adopt: return "adopt";
        case GateDecision::queue_for_human: return "queue_for_human";
        case GateDecision::reject: return "reject";
    }
    return "reject";
}

void GatePolicy::validate() const {
    if (persistence < 1) throw Error("gate: persistence must be >= 1");
}

GateDecision gate_adopt(std::span<const double> scores, const GatePolicy& gate) {
    int streak = 0;
    for (auto it = scores.rbegin(); it != scores.rend() && *it >= gate.threshold; ++it) ++streak;
    if (streak < gate.persistence) return GateDecision::reject;
    if (gate.mode == GateMode::auto_adopt) return GateDecision::adopt;
    return gate.human_approval ? GateDecision::adopt : GateDecision::queue_for_human;
}

const char* to_string(SignalShape s) {
    switch (s) {
        case SignalShape::flat: return "flat";
        case SignalShape::ramp: return "ramp";
        case SignalShape::spike_decay: return "spike_decay";
    }
    return "flat";
}

void SignalModel::validate() const {
    if (base_volume < 0.0) throw Error("signal: base_volume must be >= 0");
    if (noise_cv < 0.0) throw Error("signal: noise_cv must be >= 0");
    if (sentiment < -1.0 || sentiment > 1.0) throw Error("signal: sentiment must be in [-1,1]");
    if (decay < 0.0 || decay > 1.0) throw Error("signal: decay must be in [0,1]");
}

std::vector<double> generate_signal(const SignalModel& model, int horizon, Rng stream) {
    model.validate();
    std::vector<double> out(static_cast<std::size_t>(std::max(horizon, 0)));
    for (int t = 0; t < horizon; ++t) {
        double v = model.base_volume;
        const int since = t - model.onset;
        if (since >= 0) {
            if (model.shape == SignalShape::ramp) v *= 1.0 + model.growth * since;
            if (model.shape == SignalShape::spike_decay)
                v *= 1.0 + model.spike_height * std::pow(1.0 - model.decay, since);
        }
        if (model.noise_cv > 0.0) v *= 1.0 + model.noise_cv * stream.normal();
        out[static_cast<std::size_t>(t)] = std::max(0.0, v);
    }
    return out;
}

TrendRoiReport trend_roi(std::span<const SkuOutcome> all_skus, std::span<const std::string> adopted) {
    TrendRoiReport report;
    if (adopted.empty()) return report;

    std::vector<const SkuOutcome*> ranked;
    for (const auto& s : all_skus) ranked.push_back(&s);
    std::sort(ranked.begin(), ranked.end(), [](const SkuOutcome* a, const SkuOutcome* b) {
        if (a->sales != b->sales) return a->sales > b->sales;
        return a->sku_id < b->sku_id;
    });
    const std::size_t top_n = (ranked.size() + 3) / 4;

    double revenue = 0.0;
    double cost = 0.0;
    int top = 0;
    for (const auto& id : adopted) {
        auto it = std::find_if(all_skus.begin(), all_skus.end(), [&](const SkuOutcome& s) { return s.sku_id == id; });
        if (it == all_skus.end()) continue;
        SkuRoi r;
        r.sku_id = id;
        r.margin_revenue = it->unit_margin * static_cast<double>(it->sales);
        r.cost = it->total_cost.currency();
        r.defined = r.cost > 0.0;
        r.roi = r.defined ? (r.margin_revenue - r.cost) / r.cost : 0.0;
        const auto pos = static_cast<std::size_t>(
            std::find(ranked.begin(), ranked.end(), &*it) - ranked.begin());
        r.top_seller = pos < top_n;
        top += r.top_seller ? 1 : 0;
        revenue += r.margin_revenue;
        cost += r.cost;
        report.per_sku.push_back(r);
    }
    report.aggregate_defined = cost > 0.0;
    report.aggregate_roi = report.aggregate_defined ? (revenue - cost) / cost : 0.0;
    report.top_seller_fraction =
        report.per_sku.empty() ? 0.0 : static_cast<double>(top) / static_cast<double>(report.per_sku.size());
    return report;
}

}  // namespace replenish
