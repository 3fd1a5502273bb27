#include "replenish/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace replenish {

const char* to_string(ForecastMethod m) {
    switch (m) {
        case ForecastMethod::naive: return "naive";
        case ForecastMethod::moving_average: return "moving_average";
        case ForecastMethod::exp_smoothing: return "exp_smoothing";
        case ForecastMethod::seasonal_naive: return "seasonal_naive";
    }
    return "naive";
}

void ForecastConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("forecast: alpha must be in (0,1]");
    if (window < 1) throw Error("forecast: window must be >= 1");
    if (season_period < 1) throw Error("forecast: season_period must be >= 1");
    if (error_window < 1) throw Error("forecast: error_window must be >= 1");
}

double exp_smoothing_update(double forecast, double observation, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("exp_smoothing_update: alpha must be in (0,1]");
    return alpha * observation + (1.0 - alpha) * forecast;
}

SeasonalNaive seasonal_naive(std::span<const double> history, int season_period) {
    if (history.empty()) return {0.0, true};
    if (season_period < 1 || history.size() < static_cast<std::size_t>(season_period))
        return {history.back(), true};
    return {history[history.size() - static_cast<std::size_t>(season_period)], false};
}

void update_error_stats(ForecastStats& stats, double forecast, double actual) {
    stats.errors.push_back(actual - forecast);
    while (stats.errors.size() > static_cast<std::size_t>(stats.window)) stats.errors.pop_front();
    const double sq = std::accumulate(stats.errors.begin(), stats.errors.end(), 0.0,
                                      [](double acc, double e) { return acc + e * e; });
    stats.error_std = std::sqrt(sq / static_cast<double>(stats.errors.size()));
}

DemandForecaster::DemandForecaster(ForecastConfig config) : config_(config) {
    config_.validate();
    stats_.method = config_.method;
    stats_.window = config_.error_window;
}

void DemandForecaster::seed(double mean) {
    level_ = std::max(0.0, mean);
    has_level_ = true;
    stats_.mean_estimate = level_;
}

void DemandForecaster::observe(double actual) {
    if (stats_.history_len > 0 || has_level_) update_error_stats(stats_, stats_.mean_estimate, actual);
    history_.push_back(actual);
    ++stats_.history_len;
    if (!has_level_) {
        level_ = actual;
        has_level_ = true;
    } else {
        level_ = exp_smoothing_update(level_, actual, config_.alpha);
    }
    const double raw = next_forecast();
    clamped_ = raw < 0.0;
    stats_.mean_estimate = std::max(0.0, raw);
}

double DemandForecaster::next_forecast() {
    switch (config_.method) {
        case ForecastMethod::naive: return history_.back();
        case ForecastMethod::moving_average: {
            const auto n = std::min<std::size_t>(history_.size(), static_cast<std::size_t>(config_.window));
            const double sum = std::accumulate(history_.end() - static_cast<std::ptrdiff_t>(n), history_.end(), 0.0);
            return sum / static_cast<double>(n);
        }
        case ForecastMethod::exp_smoothing: return level_;
        case ForecastMethod::seasonal_naive: {
            const auto s = seasonal_naive(history_, config_.season_period);
            seasonal_fallback_ = s.fell_back;
            return s.value;
        }
    }
    return level_;
}

double DemandForecaster::error_std() const {
    if (stats_.errors.size() < static_cast<std::size_t>(stats_.window)) return 0.5 * stats_.mean_estimate;
    return stats_.error_std;
}

}  // namespace replenish
