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

#include "airslice/controller.hpp"

#include <string>

#include <httplib.h>

#include "airslice/solver.hpp"

namespace airslice {

std::string_view to_string(CycleStatus status) {
  switch (status) {
    case CycleStatus::Optimal: return "optimal";
    case CycleStatus::Infeasible: return "infeasible";
    case CycleStatus::Held: return "held";
  }
  return "unknown";
}

CycleStatus cycle_status_from_string(std::string_view text) {
  if (text == "optimal") return CycleStatus::Optimal;
  if (text == "infeasible") return CycleStatus::Infeasible;
  if (text == "held") return CycleStatus::Held;
  throw Error(Errc::IoError, "unknown cycle status '" + std::string(text) + "'");
}

AllocationProblem build_problem(const PolicyDocument& policy,
                                const std::vector<SubstrateId>& substrates,
                                const std::vector<LoadReport>& reports) {
  const int n_sub = static_cast<int>(substrates.size());
  const int n_sl = policy.n_slices();
  if (static_cast<int>(policy.substrates.size()) != n_sub) {
    throw Error(Errc::DimensionMismatch, "policy substrate list does not match managed set");
  }

  AllocationProblem p;
  p.substrates = substrates;
  p.n_slices = n_sl;
  p.bid.resize(n_sl);
  p.quota_scheduled.resize(n_sl);
  p.quota_contention.resize(n_sl);
  for (int j = 0; j < n_sl; ++j) {
    p.bid[j] = policy.slices[j].bid;
    p.quota_scheduled[j] = policy.slices[j].quota_scheduled;
    p.quota_contention[j] = policy.slices[j].quota_contention;
  }
  p.minima = minima_matrix(policy);

  p.utility_coeff = Matrix(n_sub, n_sl);
  if (policy.coefficient_source == CoefficientSource::Fixed) {
    p.utility_coeff = policy.fixed_coefficients;
  } else {
    for (int k = 0; k < n_sub; ++k) {
      if (static_cast<int>(reports[k].slices.size()) != n_sl) {
        throw Error(Errc::DimensionMismatch,
                    "report for substrate " + std::to_string(k) +
                        " carries the wrong slice count");
      }
      for (int j = 0; j < n_sl; ++j) {
        p.utility_coeff.at(k, j) = reports[k].slices[j].avg_phy_rate;
      }
    }
  }

  p.price_weight.resize(n_sub, 1.0);
  if (policy.pricing_mode == PricingMode::WeightedRevenue) {
    for (int k = 0; k < n_sub; ++k) {
      p.price_weight[k] = price_weight_for(policy, policy.substrates[k]);
    }
  }
  return p;
}

std::pair<ControllerState, CycleRecord> control_cycle(ControllerState state,
                                                      const std::vector<LoadReport>& reports) {
  const int n_sub = static_cast<int>(state.substrates.size());
  if (static_cast<int>(reports.size()) != n_sub) {
    throw Error(Errc::MissingSubstrateReport,
                "expected " + std::to_string(n_sub) + " reports, got " +
                    std::to_string(reports.size()));
  }
  std::vector<const LoadReport*> ordered(n_sub, nullptr);
  for (const auto& rep : reports) {
    int slot = -1;
    for (int k = 0; k < n_sub; ++k) {
      if (state.substrates[k] == rep.substrate) slot = k;
    }
    if (slot < 0 || ordered[slot] != nullptr) {
      throw Error(Errc::MissingSubstrateReport,
                  "report for unmanaged or duplicated substrate index " +
                      std::to_string(rep.substrate.index));
    }
    ordered[slot] = &rep;
  }
  const std::int64_t cycle = reports.front().cycle;
  for (const auto& rep : reports) {
    if (rep.cycle != cycle) {
      throw Error(Errc::ReportCycleMismatch,
                  "reports span cycles " + std::to_string(cycle) + " and " +
                      std::to_string(rep.cycle));
    }
  }

  std::vector<LoadReport> in_order;
  in_order.reserve(n_sub);
  for (const auto* r : ordered) in_order.push_back(*r);
  const AllocationProblem problem = build_problem(state.policy, state.substrates, in_order);

  CycleRecord record;
  record.cycle = cycle;
  const bool due = state.policy.control_period <= 1 ||
                   cycle % state.policy.control_period == 0;
  if (!due) {
    record.solve_status = CycleStatus::Held;
    record.allocation = state.last_allocation;
  } else {
    const SolveReport solved = solve(problem);
    if (solved.status == SolveStatus::Optimal) {
      record.solve_status = CycleStatus::Optimal;
      record.allocation = solved.allocation;
      state.last_allocation = solved.allocation;
    } else {
      record.solve_status = CycleStatus::Infeasible;
      record.allocation = state.last_allocation;
    }
  }
  record.dynamic_revenue = revenue_of(record.allocation, problem);
  record.static_revenue = revenue_of(state.static_baseline, problem);
  state.cycle = cycle + 1;
  return {std::move(state), std::move(record)};
}

namespace {

void check_policy_matches_layout(const PolicyDocument& policy,
                                 const std::vector<SubstrateRef>& layout, int n_slices) {
  if (policy.substrates.size() != layout.size()) {
    throw Error(Errc::InvalidConfig, "policy substrate count does not match experiment");
  }
  for (size_t i = 0; i < layout.size(); ++i) {
    if (policy.substrates[i].name != layout[i].name ||
        policy.substrates[i].kind != layout[i].kind) {
      throw Error(Errc::InvalidConfig,
                  "policy substrate '" + policy.substrates[i].name +
                      "' does not match experiment substrate '" + layout[i].name + "'");
    }
  }
  if (policy.n_slices() != n_slices) {
    throw Error(Errc::InvalidConfig, "policy slice count does not match experiment");
  }
}

}  // namespace

MetricsSeries run_experiment(const ExperimentConfig& config, const PolicySource& source) {
  validate_config(config);
  const auto layout = substrate_layout(config);
  const auto ids = substrate_ids(config);

  PolicyDocument policy = source();
  ensure_valid(policy);
  check_policy_matches_layout(policy, layout, config.slices_per_substrate);

  const AllocationMatrix baseline = static_allocation(config);

  std::vector<SubstrateState> substrates;
  substrates.reserve(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    const double peak = ids[i].kind == SubstrateKind::ScheduledBasestation
                            ? config.bts_peak_rate
                            : config.ap_peak_rate;
    auto s = make_substrate(ids[i], peak, config.slices_per_substrate, config.seed);
    s = apply_quota(std::move(s), baseline.row(static_cast<int>(i)));
    substrates.push_back(std::move(s));
  }

  ControllerState state{policy, ids, baseline, baseline, 0};

  MetricsSeries series;
  series.config_digest = config_digest(config);
  series.substrates = layout;
  series.n_slices = config.slices_per_substrate;
  series.records.reserve(static_cast<size_t>(config.n_cycles));

  for (std::int64_t cycle = 0; cycle < config.n_cycles; ++cycle) {
    if (cycle > 0 && state.policy.policy_refresh_period > 0 &&
        cycle % state.policy.policy_refresh_period == 0) {
      PolicyDocument fresh = source();
      ensure_valid(fresh);
      check_policy_matches_layout(fresh, layout, config.slices_per_substrate);
      state.policy = std::move(fresh);
    }
    std::vector<LoadReport> reports;
    reports.reserve(substrates.size());
    for (auto& s : substrates) {
      s = step_load(std::move(s), config.load_model);
      reports.push_back(report(s, cycle));
    }
    auto [next, record] = control_cycle(std::move(state), reports);
    state = std::move(next);
    for (size_t i = 0; i < substrates.size(); ++i) {
      substrates[i] =
          apply_quota(std::move(substrates[i]), state.last_allocation.row(static_cast<int>(i)));
      substrates[i] = commit_report(std::move(substrates[i]), reports[i]);
    }
    series.records.push_back(std::move(record));
  }
  return series;
}

MetricsSeries run_experiment(const ExperimentConfig& config, const PolicyDocument& policy) {
  return run_experiment(config, [&policy]() { return policy; });
}

namespace {

struct ParsedUrl {
  std::string host;
  int port = 80;
  std::string path = "/policy";
};

ParsedUrl parse_http_url(const std::string& url) {
  constexpr std::string_view scheme = "http://";
  if (!url.starts_with(scheme)) {
    throw Error(Errc::Unreachable, "only http:// endpoints are supported: " + url);
  }
  std::string rest = url.substr(scheme.size());
  ParsedUrl out;
  const auto slash = rest.find('/');
  std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
  if (slash != std::string::npos && slash + 1 < rest.size()) {
    out.path = rest.substr(slash);
  }
  const auto colon = authority.find(':');
  if (colon == std::string::npos) {
    out.host = authority;
  } else {
    out.host = authority.substr(0, colon);
    try {
      out.port = std::stoi(authority.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(Errc::Unreachable, "bad port in url: " + url);
    }
  }
  if (out.host.empty()) throw Error(Errc::Unreachable, "bad host in url: " + url);
  return out;
}

}  // namespace

std::string fetch_policy_text(const std::string& endpoint) {
  const ParsedUrl url = parse_http_url(endpoint);
  httplib::Client client(url.host, url.port);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(5, 0);
  auto res = client.Get(url.path);
  if (!res) {
    throw Error(Errc::Unreachable,
                endpoint + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(Errc::Unreachable,
                endpoint + " returned status " + std::to_string(res->status));
  }
  return res->body;
}

PolicyDocument fetch_policy(const std::string& endpoint) {
  PolicyDocument doc = policy_from_json(fetch_policy_text(endpoint));
  const auto violations = validate_policy(doc);
  if (!violations.empty()) {
    throw Error(Errc::MalformedPolicy,
                violations.front().field + ": " + violations.front().detail);
  }
  return doc;
}

}  // namespace airslice
