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
#include <span>
#include <vector>

#include "airslice/problem.hpp"
#include "airslice/random.hpp"

namespace airslice {

/// Per-cycle PHY-rate model for one substrate's slices.
///  - Uniform: i.i.d. per slice per cycle on [min_fraction * peak, peak].
///  - Constant: zero variance at `rate` (defaults to the substrate peak).
///
/// The default lower bound of 0.14 caps the single-cycle dynamic-over-static
/// improvement at 54.2% in the two-substrate reference setup; see
/// docs/formats.md for the load-model schema.
struct LoadModel {
  enum class Kind { Uniform, Constant };
  Kind kind = Kind::Uniform;
  double min_fraction = 0.14;  // Uniform only; must lie in (0, 1]
  double rate = 0.0;           // Constant only; 0 means the substrate peak
};

/// Feedback for one slice inside a LoadReport.
struct SliceLoad {
  double avg_phy_rate = 0.0;       // Mbps; becomes the utility coefficient
  double achieved_rate = 0.0;      // Mbps
  double used_airtime = 0.0;       // fraction of the substrate's airtime
  bool usage_flag = false;
  double requested_airtime = 0.0;  // airtime needed to repeat last cycle's rate
};

/// One cycle of substrate feedback polled by the controller.
struct LoadReport {
  SubstrateId substrate;
  std::int64_t cycle = 0;
  std::vector<SliceLoad> slices;
};

/// State of one simulated virtualized radio. Both MAC families reduce to an
/// airtime budget here: the scheduled and contention substrates differ only
/// in kind tag and peak rate.
struct SubstrateState {
  SubstrateId id;
  double peak_phy_rate = 0.0;               // Mbps
  std::vector<double> current_quota;        // per slice, sums to <= 1
  std::vector<double> per_slice_phy_rate;   // Mbps, in (0, peak]
  std::vector<double> prev_achieved_rate;   // Mbps, feeds requested_airtime
  RandomStream rng;
};

/// Fresh substrate with every slice at the peak PHY rate, zero quotas, and a
/// random stream derived from the master seed and the substrate index.
SubstrateState make_substrate(SubstrateId id, double peak_phy_rate, int n_slices,
                              std::uint64_t master_seed);

/// Redraws each slice's average PHY rate from the load model.
SubstrateState step_load(SubstrateState state, const LoadModel& model);

/// Installs a new per-slice quota column; takes effect from the next report.
/// Throws QuotaOverflow when the quotas sum above 1.
SubstrateState apply_quota(SubstrateState state, std::span<const double> quota);

/// Snapshot of the current cycle under the saturated-demand model: every
/// slice is backlogged, so used airtime equals its quota and achieved rate
/// is used airtime times the slice PHY rate.
LoadReport report(const SubstrateState& state, std::int64_t cycle);

/// Records the report's achieved rates for the next cycle's
/// requested-airtime computation.
SubstrateState commit_report(SubstrateState state, const LoadReport& rep);

/// The evaluation baseline: each slice's total bid split equally across all
/// substrates and held fixed. Throws InfeasibleStatic when the equal split
/// breaks a per-substrate airtime sum or a minimum reservation.
AllocationMatrix static_allocation(std::span<const double> bids,
                                   const std::vector<SubstrateId>& substrates,
                                   const Matrix& minima);

}  // namespace airslice
