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

#include <optional>
#include <string>
#include <vector>

#include "airslice/errors.hpp"
#include "airslice/matrix.hpp"

namespace airslice {

/// Scheduled MAC (basestation) vs contention MAC (WiFi access point).
enum class SubstrateKind { ScheduledBasestation, ContentionAccessPoint };

std::string_view to_string(SubstrateKind kind);

/// One virtualized radio endpoint. `index` is its row in every matrix of the
/// experiment; `kind` decides which per-kind quota set applies to it.
struct SubstrateId {
  int index = 0;
  SubstrateKind kind = SubstrateKind::ScheduledBasestation;

  bool operator==(const SubstrateId&) const = default;
};

/// Airtime fractions per (substrate row, slice column) — the controller's
/// decision variable.
using AllocationMatrix = Matrix;

/// One airtime-allocation optimization instance.
///
/// Feasible set: per substrate k the row sum of t is at most 1; per slice j,
/// the sum over substrates of one kind is at most that kind's quota (when
/// given) and the sum over all substrates is at most the slice's bid (when
/// given); every entry is at least its minimum reservation.
/// Objective: sum over (k, j) of price_weight[k] * t(k, j) * utility_coeff(k, j).
struct AllocationProblem {
  std::vector<SubstrateId> substrates;
  int n_slices = 0;

  /// Per-slice total airtime budget across all substrates (the slice's bid).
  std::vector<std::optional<double>> bid;
  /// Per-slice airtime quota over the scheduled-basestation group.
  std::vector<std::optional<double>> quota_scheduled;
  /// Per-slice airtime quota over the access-point group.
  std::vector<std::optional<double>> quota_contention;

  /// Minimum airtime reservations, substrates x slices.
  Matrix minima;
  /// Linear utility coefficients in Mbps (average slice PHY rates),
  /// substrates x slices.
  Matrix utility_coeff;
  /// Per-substrate revenue scale; all ones in rate-maximization mode.
  std::vector<double> price_weight;

  int n_substrates() const { return static_cast<int>(substrates.size()); }
  int n_variables() const { return n_substrates() * n_slices; }
};

enum class SolveStatus { Optimal, Infeasible };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  AllocationMatrix allocation;
  double objective = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
};

struct FeasibilityReport {
  bool feasible = true;
  /// Human-readable description of the first violated constraint.
  std::string violation;
};

/// Throws ValidationFailed on malformed instances: mismatched dimensions,
/// negative coefficients, weights, minima, quotas, or bids.
void validate_problem(const AllocationProblem& problem);

/// Revenue of an allocation under a problem's coefficients and weights.
/// Throws DimensionMismatch when shapes differ.
double revenue_of(const AllocationMatrix& allocation, const AllocationProblem& problem);

/// The constraint polytope is nonempty iff the minima themselves satisfy
/// every sum constraint (the minima are its componentwise least point, since
/// all constraint coefficients are nonnegative).
FeasibilityReport check_feasibility(const AllocationProblem& problem);

/// True when `allocation` satisfies every problem constraint within `tol`.
/// `violation`, when non-null, receives the first failing constraint.
bool allocation_satisfies(const AllocationMatrix& allocation,
                          const AllocationProblem& problem, double tol,
                          std::string* violation = nullptr);

}  // namespace airslice
