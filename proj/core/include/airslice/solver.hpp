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

#include "airslice/problem.hpp"

namespace airslice {

/// Exact maximizer of revenue_of over the problem's constraint polytope.
///
/// The objective is linear and the constraints are row sums with lower
/// bounds, so this runs a dense primal simplex on the minima-shifted
/// problem with Bland's pivot rule. Deterministic: identical problems yield
/// identical reports. Returns Infeasible when the polytope is empty. Under
/// degenerate optima only the objective value is contract-stable; the
/// returned vertex is whichever the pivot rule reaches.
SolveReport solve(const AllocationProblem& problem);

/// Verification oracle: exhaustively evaluates every feasible allocation on
/// the grid {minimum, minimum + grid_step, ...} per variable and returns the
/// best, ties broken toward the lexicographically smallest flattened
/// allocation. Exponential; throws TooManyVariables above 6 decision
/// variables. Subtrees are pruned only when provably without feasible
/// points or strictly below the incumbent objective, so the result is
/// identical to full enumeration.
SolveReport brute_force_solve(const AllocationProblem& problem, double grid_step);

}  // namespace airslice
