#pragma once

#include <span>
#include <string>
#include <vector>

#include "replenish/core.hpp"
#include "replenish/rng.hpp"

namespace replenish {

struct TrendScoreParams {
    double slope_weight = 0.7;
    double sentiment_weight = 0.3;
    double slope_ref = 0.25;  // normalized slope that saturates the slope term
};

struct TrendSignal {
    std::string candidate_sku_id;
    std::vector<double> volume;
    double sentiment = 0.0;  // [-1, 1]
    int window = 7;
};

/// Least-squares slope of ys against 0..n-1.
double least_squares_slope(std::span<const double> ys);

/// Slope over the last `window` points, normalized by their mean and clipped
/// at zero.
double normalized_slope(std::span<const double> volume, int window);

/// w1 min(1, normalized_slope / s_ref) + w2 (sentiment + 1) / 2.
/// Throws Error when the series is shorter than the window.
double trend_score(std::span<const double> volume, double sentiment, int window, const TrendScoreParams& params = {});
double trend_score(const TrendSignal& signal, const TrendScoreParams& params = {});

enum class GateMode { auto_adopt, human_queue };
enum class GateDecision { adopt, queue_for_human, reject };

const char* to_string(GateDecision d);

struct GatePolicy {
    double threshold = 0.8;
    int persistence = 3;
    GateMode mode = GateMode::auto_adopt;
    /// Simulated reviewer verdict for human_queue mode.
    bool human_approval = false;

    void validate() const;
};

/// Looks at the trailing run of scores at or above the threshold.
GateDecision gate_adopt(std::span<const double> scores, const GatePolicy& gate);

enum class SignalShape { flat, ramp, spike_decay };

const char* to_string(SignalShape s);

/// Synthetic search-volume proxy for one candidate.
struct SignalModel {
    SignalShape shape = SignalShape::flat;
    double base_volume = 100.0;
    double growth = 0.0;      // ramp: volume gained per period, as a fraction of base
    Period onset = 0;         // ramp / spike start
    double spike_height = 0.0;  // spike: peak multiple of base
    double decay = 0.1;       // spike: per-period relative decay
    double noise_cv = 0.0;
    double sentiment = 0.0;

    void validate() const;
};

std::vector<double> generate_signal(const SignalModel& model, int horizon, Rng stream);

struct SkuOutcome {
    std::string sku_id;
    Units sales = 0;
    Money total_cost;
    double unit_margin = 0.0;
};

struct SkuRoi {
    std::string sku_id;
    double margin_revenue = 0.0;
    double cost = 0.0;
    double roi = 0.0;
    bool defined = true;  // false when the attributed cost is zero
    bool top_seller = false;
};

struct TrendRoiReport {
    std::vector<SkuRoi> per_sku;
    double aggregate_roi = 0.0;
    bool aggregate_defined = false;
    double top_seller_fraction = 0.0;
};

/// ROI of adopted SKUs, (margin * sales - cost) / cost, and the share of
/// them whose sales rank in the top quartile of all SKUs.
TrendRoiReport trend_roi(std::span<const SkuOutcome> all_skus, std::span<const std::string> adopted);

}  // namespace replenish
