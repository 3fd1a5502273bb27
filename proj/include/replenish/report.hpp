#pragma once

#include <filesystem>
#include <functional>
#include <ostream>

#include "replenish/engine.hpp"

namespace replenish {

// CSV layouts are frozen per scenario schema version; see README.

void write_metrics_csv(std::ostream& out, const RunReport& report);
void write_timeseries_csv(std::ostream& out, const RunReport& report);
void write_orders_csv(std::ostream& out, const RunReport& report);
void write_summary(std::ostream& out, const RunReport& report);

/// metrics.csv, timeseries.csv, orders.csv and summary.txt under `dir`.
void write_run(const std::filesystem::path& dir, const RunReport& report);

/// One row per (variant, seed), then mean and std rows per variant.
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
/// Paired per-seed deltas of every variant against the first.
void write_paired_csv(std::ostream& out, const ComparisonReport& report);
void write_sensitivity_csv(std::ostream& out, const SensitivityReport& report);

/// Opens `path` for writing, creating parent directories; throws Error on failure.
void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace replenish
