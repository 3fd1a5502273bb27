#pragma once

#include <deque>
#include <span>
#include <string>
#include <vector>

#include "replenish/core.hpp"

namespace replenish {

enum class ForecastMethod { naive, moving_average, exp_smoothing, seasonal_naive };

const char* to_string(ForecastMethod m);

struct ForecastConfig {
    ForecastMethod method = ForecastMethod::exp_smoothing;
    double alpha = 0.3;
    int window = 7;          // moving_average
    int season_period = 7;   // seasonal_naive
    int error_window = 30;   // RMSE window for the error std

    void validate() const;
};

/// forecast' = alpha * observation + (1 - alpha) * forecast. Throws on alpha
/// outside (0, 1].
double exp_smoothing_update(double forecast, double observation, double alpha);

struct SeasonalNaive {
    double value = 0.0;
    bool fell_back = false;  // history shorter than one season; naive used
};

/// Forecast for the period after `history`: the value one season back.
SeasonalNaive seasonal_naive(std::span<const double> history, int season_period);

struct ForecastStats {
    double mean_estimate = 0.0;
    double error_std = 0.0;
    ForecastMethod method = ForecastMethod::exp_smoothing;
    int history_len = 0;
    int window = 30;
    std::deque<double> errors;  // last `window` one-step errors
};

/// Appends the one-step error (actual - forecast) and sets error_std to the
/// RMSE of the retained window.
void update_error_stats(ForecastStats& stats, double forecast, double actual);

/// Per-SKU forecasting state. observe() scores the standing one-step
/// forecast against the actual, then rolls the forecast forward.
class DemandForecaster {
public:
    explicit DemandForecaster(ForecastConfig config);

    void observe(double actual);
    /// Seeds the level without an observation (cold start for new SKUs).
    void seed(double mean);

    double mean() const { return stats_.mean_estimate; }
    /// RMSE of one-step errors; 0.5 * mean until a full error window exists.
    double error_std() const;
    bool clamped() const { return clamped_; }
    bool seasonal_fallback() const { return seasonal_fallback_; }
    const ForecastStats& stats() const { return stats_; }
    const ForecastConfig& config() const { return config_; }

private:
    double next_forecast();

    ForecastConfig config_;
    ForecastStats stats_;
    std::vector<double> history_;
    double level_ = 0.0;
    bool has_level_ = false;
    bool clamped_ = false;
    bool seasonal_fallback_ = false;
};

}  // namespace replenish
