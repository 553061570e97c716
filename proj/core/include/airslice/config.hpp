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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "airslice/policy.hpp"
#include "airslice/substrate.hpp"

namespace airslice {

/// Full description of one seeded experiment: simulation layout plus the
/// parameters the static baseline is built from. The policy served to the
/// controller normally mirrors the bids/minima here; when they differ, the
/// fetched policy drives the optimizer and the config drives the baseline.
struct ExperimentConfig {
  std::int64_t n_cycles = 1000;
  std::uint64_t seed = 1;

  int n_btss = 1;
  int n_aps = 1;
  int slices_per_substrate = 2;
  double bts_peak_rate = 20.0;  // Mbps
  double ap_peak_rate = 36.0;   // Mbps

  std::vector<double> bids;  // per slice, total across substrates
  std::vector<MinimumReservation> minima;
  PricingMode pricing_mode = PricingMode::RateMaximization;
  std::map<std::string, double> price_weights;

  LoadModel load_model;
};

/// Canonical substrate order of an experiment: basestations first, then
/// access points, named bts0.., ap0..
std::vector<SubstrateRef> substrate_layout(const ExperimentConfig& config);

/// Substrate ids matching substrate_layout (index = matrix row).
std::vector<SubstrateId> substrate_ids(const ExperimentConfig& config);

/// Throws InvalidConfig on structural problems (counts, rates, bid/minima
/// shapes, load model parameters).
void validate_config(const ExperimentConfig& config);

/// Equal-split baseline for this experiment (bids and minima from config).
AllocationMatrix static_allocation(const ExperimentConfig& config);

/// Stable identifier of the generating config: 64-bit FNV-1a over the
/// canonical JSON form, as 16 hex digits.
std::string config_digest(const ExperimentConfig& config);

ExperimentConfig config_from_json(std::string_view text);
std::string config_to_json(const ExperimentConfig& config, int indent = 2);
ExperimentConfig load_config_file(const std::filesystem::path& path);

}  // namespace airslice
