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

#include <functional>
#include <utility>
#include <vector>

#include "airslice/config.hpp"
#include "airslice/policy.hpp"
#include "airslice/series.hpp"
#include "airslice/substrate.hpp"

namespace airslice {

/// Control-loop state for one access network. The last allocation always
/// satisfies the cached policy's constraints or is the initial static
/// allocation.
struct ControllerState {
  PolicyDocument policy;
  std::vector<SubstrateId> substrates;  // managed set, canonical order
  AllocationMatrix static_baseline;     // comparison point, fixed per run
  AllocationMatrix last_allocation;
  std::int64_t cycle = 0;
};

/// Builds the optimization instance for one cycle: constraints from the
/// policy, utility coefficients from the reports' average PHY rates (or the
/// policy's fixed table), weights per pricing mode. Reports must be in
/// substrate order.
AllocationProblem build_problem(const PolicyDocument& policy,
                                const std::vector<SubstrateId>& substrates,
                                const std::vector<LoadReport>& reports);

/// One control iteration: poll feedback, solve, account. Expects exactly one
/// report per managed substrate, all for the same cycle (any order). On an
/// Optimal solve the returned state carries the new allocation for the
/// caller to push; on Infeasible the previous allocation is kept and the
/// record flagged. Throws ReportCycleMismatch / MissingSubstrateReport.
std::pair<ControllerState, CycleRecord> control_cycle(ControllerState state,
                                                      const std::vector<LoadReport>& reports);

/// Supplies the controller's policy; called once at startup and again at
/// every policy refresh boundary.
using PolicySource = std::function<PolicyDocument()>;

/// Runs the full closed loop for config.n_cycles: redraw loads, poll
/// reports, solve, push quotas, record both revenues. Deterministic for a
/// given config (seed included).
MetricsSeries run_experiment(const ExperimentConfig& config, const PolicySource& source);
MetricsSeries run_experiment(const ExperimentConfig& config, const PolicyDocument& policy);

/// Fetches and validates the current policy from an NWPD endpoint
/// (e.g. "http://127.0.0.1:8080/policy"). Throws Unreachable on transport
/// failure or non-200 status, MalformedPolicy on bad or invalid documents.
PolicyDocument fetch_policy(const std::string& endpoint);

/// Raw document bytes from an NWPD endpoint, unparsed and unvalidated.
/// Throws Unreachable only.
std::string fetch_policy_text(const std::string& endpoint);

}  // namespace airslice
