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

#include "airslice/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace airslice {

namespace {

/// Shortest decimal form that round-trips the exact double.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, const std::filesystem::path& path) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::IoError, path.string() + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  return out;
}

std::string weight_header(const MetricsSeries& series) {
  std::string h;
  for (const auto& sub : series.substrates) {
    for (int j = 0; j < series.n_slices; ++j) {
      h += ",w_" + sub.name + "_s" + std::to_string(j);
    }
  }
  return h;
}

}  // namespace

ImprovementStats improvement_stats(const MetricsSeries& series) {
  if (series.records.empty()) throw Error(Errc::EmptySeries, "no cycles recorded");
  ImprovementStats stats;
  double sum = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> normalized;
  normalized.reserve(series.records.size());
  for (const auto& rec : series.records) {
    if (!(rec.static_revenue > 0.0)) {
      throw Error(Errc::ZeroStaticRevenue,
                  "static revenue is " + std::to_string(rec.static_revenue) + " at cycle " +
                      std::to_string(rec.cycle));
    }
    const double improvement =
        (rec.dynamic_revenue - rec.static_revenue) / rec.static_revenue * 100.0;
    sum += improvement;
    best = std::max(best, improvement);
    normalized.push_back(rec.dynamic_revenue / rec.static_revenue);
  }
  stats.mean_improvement_pct = sum / static_cast<double>(series.records.size());
  stats.best_improvement_pct = best;

  std::sort(normalized.begin(), normalized.end());
  stats.cdf_points.reserve(normalized.size());
  const double n = static_cast<double>(normalized.size());
  for (size_t i = 0; i < normalized.size(); ++i) {
    stats.cdf_points.push_back({normalized[i], static_cast<double>(i + 1) / n});
  }
  return stats;
}

std::vector<WeightColumn> weight_series(const MetricsSeries& series) {
  if (series.records.empty()) throw Error(Errc::EmptySeries, "no cycles recorded");
  std::vector<WeightColumn> columns;
  for (size_t k = 0; k < series.substrates.size(); ++k) {
    for (int j = 0; j < series.n_slices; ++j) {
      WeightColumn col{series.substrates[k].name, j, {}};
      col.values.reserve(series.records.size());
      for (const auto& rec : series.records) {
        col.values.push_back(rec.allocation.at(static_cast<int>(k), j));
      }
      columns.push_back(std::move(col));
    }
  }
  return columns;
}

double column_mean(const WeightColumn& column) {
  if (column.values.empty()) return 0.0;
  double s = 0.0;
  for (double v : column.values) s += v;
  return s / static_cast<double>(column.values.size());
}

double column_variance(const WeightColumn& column) {
  if (column.values.empty()) return 0.0;
  const double mean = column_mean(column);
  double s = 0.0;
  for (double v : column.values) s += (v - mean) * (v - mean);
  return s / static_cast<double>(column.values.size());
}

void emit_series_csv(const MetricsSeries& series, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "cycle,status,dynamic_revenue,static_revenue" << weight_header(series) << "\n";
  for (const auto& rec : series.records) {
    out << rec.cycle << ',' << to_string(rec.solve_status) << ','
        << format_double(rec.dynamic_revenue) << ',' << format_double(rec.static_revenue);
    for (size_t k = 0; k < series.substrates.size(); ++k) {
      for (int j = 0; j < series.n_slices; ++j) {
        out << ',' << format_double(rec.allocation.at(static_cast<int>(k), j));
      }
    }
    out << '\n';
  }
}

MetricsSeries parse_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::IoError, path.string() + ": empty file");

  MetricsSeries series;
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "cycle" || header[1] != "status") {
    throw Error(Errc::IoError, path.string() + ": unrecognized header");
  }
  // Weight columns are named w_<substrate>_s<slice>; slices are contiguous
  // per substrate, so substrate order and slice count fall out of the names.
  for (size_t i = 4; i < header.size(); ++i) {
    const std::string& h = header[i];
    const auto us = h.rfind("_s");
    if (!h.starts_with("w_") || us == std::string::npos || us <= 2) {
      throw Error(Errc::IoError, path.string() + ": bad weight column '" + h + "'");
    }
    const std::string name = h.substr(2, us - 2);
    const int slice = std::stoi(h.substr(us + 2));
    if (series.substrates.empty() || series.substrates.back().name != name) {
      series.substrates.push_back(
          {name, name.starts_with("ap") ? SubstrateKind::ContentionAccessPoint
                                        : SubstrateKind::ScheduledBasestation});
    }
    series.n_slices = std::max(series.n_slices, slice + 1);
  }
  const int n_sub = static_cast<int>(series.substrates.size());

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(Errc::IoError, path.string() + ": row has " + std::to_string(cells.size()) +
                                     " cells, header has " + std::to_string(header.size()));
    }
    CycleRecord rec;
    {
      const std::string& s = cells[0];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), rec.cycle);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(Errc::IoError, path.string() + ": bad cycle '" + s + "'");
      }
    }
    rec.solve_status = cycle_status_from_string(cells[1]);
    rec.dynamic_revenue = parse_double(cells[2], path);
    rec.static_revenue = parse_double(cells[3], path);
    rec.allocation = AllocationMatrix(n_sub, series.n_slices);
    size_t cell = 4;
    for (int k = 0; k < n_sub; ++k) {
      for (int j = 0; j < series.n_slices; ++j) {
        rec.allocation.at(k, j) = parse_double(cells[cell++], path);
      }
    }
    series.records.push_back(std::move(rec));
  }
  return series;
}

void emit_weights_csv(const MetricsSeries& series, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "cycle" << weight_header(series) << "\n";
  for (const auto& rec : series.records) {
    out << rec.cycle;
    for (size_t k = 0; k < series.substrates.size(); ++k) {
      for (int j = 0; j < series.n_slices; ++j) {
        out << ',' << format_double(rec.allocation.at(static_cast<int>(k), j));
      }
    }
    out << '\n';
  }
}

void emit_cdf_csv(const ImprovementStats& stats, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "normalized_revenue,cumulative_probability\n";
  for (const auto& pt : stats.cdf_points) {
    out << format_double(pt.normalized_revenue) << ','
        << format_double(pt.cumulative_probability) << '\n';
  }
}

void emit_summary_json(const MetricsSeries& series, const ImprovementStats& stats,
                       const std::filesystem::path& path) {
  double dyn = 0.0, stat = 0.0;
  for (const auto& rec : series.records) {
    dyn += rec.dynamic_revenue;
    stat += rec.static_revenue;
  }
  const double n = series.records.empty() ? 1.0 : static_cast<double>(series.records.size());
  nlohmann::json j;
  j["n_cycles"] = series.records.size();
  j["config_digest"] = series.config_digest;
  j["mean_improvement_pct"] = stats.mean_improvement_pct;
  j["best_improvement_pct"] = stats.best_improvement_pct;
  j["mean_dynamic_revenue"] = dyn / n;
  j["mean_static_revenue"] = stat / n;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

}  // namespace airslice
