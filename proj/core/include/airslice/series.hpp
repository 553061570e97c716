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
#include <string>
#include <vector>

#include "airslice/policy.hpp"
#include "airslice/problem.hpp"

namespace airslice {

/// Outcome of one control cycle. Held means the controller reused its last
/// allocation without solving (control period > 1 or infeasible policy at
/// startup never produce Held in the shipped presets).
enum class CycleStatus { Optimal, Infeasible, Held };

std::string_view to_string(CycleStatus status);
CycleStatus cycle_status_from_string(std::string_view text);

/// One cycle's accounting: both revenues are evaluated at the same utility
/// coefficients, so dynamic >= static whenever the cycle solved and the
/// static point is feasible under the active policy.
struct CycleRecord {
  std::int64_t cycle = 0;
  double dynamic_revenue = 0.0;
  double static_revenue = 0.0;
  AllocationMatrix allocation;
  CycleStatus solve_status = CycleStatus::Optimal;

  bool operator==(const CycleRecord&) const = default;
};

/// Full per-cycle output of a run, ordered by cycle with no gaps.
struct MetricsSeries {
  std::vector<CycleRecord> records;
  std::string config_digest;
  std::vector<SubstrateRef> substrates;  // column labels for allocations
  int n_slices = 0;
};

}  // namespace airslice
