/*
 * Copyright 2026 The Airslice Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "airslice/series.hpp"

namespace airslice {

struct CdfPoint {
  double normalized_revenue = 0.0;      // dynamic / static for one cycle
  double cumulative_probability = 0.0;

  bool operator==(const CdfPoint&) const = default;
};

/// Dynamic-vs-static summary of a run. best >= mean by construction; the
/// CDF is the empirical distribution of per-cycle normalized revenue with
/// no smoothing.
struct ImprovementStats {
  double mean_improvement_pct = 0.0;
  double best_improvement_pct = 0.0;
  std::vector<CdfPoint> cdf_points;
};

/// Per-cycle improvement is (dynamic - static) / static * 100; mean and max
/// over all cycles. Throws ZeroStaticRevenue naming the first offending
/// cycle, EmptySeries on an empty run.
ImprovementStats improvement_stats(const MetricsSeries& series);

/// One airtime column over time, e.g. the AP's slice-0 weight.
struct WeightColumn {
  std::string substrate;
  int slice = 0;
  std::vector<double> values;
};

/// Allocation columns in cycle order, one per (substrate, slice), suitable
/// for plotting. Throws EmptySeries.
std::vector<WeightColumn> weight_series(const MetricsSeries& series);

double column_mean(const WeightColumn& column);
double column_variance(const WeightColumn& column);

/// Full-record CSV: cycle, status, both revenues, then one column per
/// (substrate, slice) allocation entry. Numbers use shortest round-trip
/// decimal form, so emit-then-parse reproduces the records exactly.
void emit_series_csv(const MetricsSeries& series, const std::filesystem::path& path);
MetricsSeries parse_series_csv(const std::filesystem::path& path);

/// Allocation-only CSV matching the weight time-series plots.
void emit_weights_csv(const MetricsSeries& series, const std::filesystem::path& path);

/// Empirical CDF points: normalized_revenue, cumulative_probability.
void emit_cdf_csv(const ImprovementStats& stats, const std::filesystem::path& path);

/// Run summary JSON: cycle count, config digest, improvement percentiles,
/// mean revenues.
void emit_summary_json(const MetricsSeries& series, const ImprovementStats& stats,
                       const std::filesystem::path& path);

}  // namespace airslice
