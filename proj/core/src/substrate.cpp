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

#include "airslice/substrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "airslice/airtime.hpp"

namespace airslice {

namespace {
constexpr double kTol = 1e-9;
}

SubstrateState make_substrate(SubstrateId id, double peak_phy_rate, int n_slices,
                              std::uint64_t master_seed) {
  if (!(peak_phy_rate > 0.0)) {
    throw Error(Errc::InvalidConfig, "substrate peak rate must be positive");
  }
  if (n_slices <= 0) {
    throw Error(Errc::InvalidConfig, "substrate needs at least one slice");
  }
  SubstrateState s;
  s.id = id;
  s.peak_phy_rate = peak_phy_rate;
  s.current_quota.assign(n_slices, 0.0);
  s.per_slice_phy_rate.assign(n_slices, peak_phy_rate);
  s.prev_achieved_rate.assign(n_slices, 0.0);
  s.rng = RandomStream(derive_stream_seed(master_seed, static_cast<std::uint64_t>(id.index)));
  return s;
}

SubstrateState step_load(SubstrateState state, const LoadModel& model) {
  switch (model.kind) {
    case LoadModel::Kind::Uniform: {
      if (!(model.min_fraction > 0.0) || model.min_fraction > 1.0) {
        throw Error(Errc::InvalidConfig, "uniform load model needs min_fraction in (0, 1]");
      }
      const double lo = model.min_fraction * state.peak_phy_rate;
      for (double& r : state.per_slice_phy_rate) {
        r = state.rng.uniform(lo, state.peak_phy_rate);
      }
      break;
    }
    case LoadModel::Kind::Constant: {
      const double r = model.rate > 0.0 ? model.rate : state.peak_phy_rate;
      if (r > state.peak_phy_rate + kTol) {
        throw Error(Errc::InvalidConfig, "constant load rate exceeds substrate peak");
      }
      std::fill(state.per_slice_phy_rate.begin(), state.per_slice_phy_rate.end(), r);
      break;
    }
  }
  return state;
}

SubstrateState apply_quota(SubstrateState state, std::span<const double> quota) {
  if (quota.size() != state.current_quota.size()) {
    throw Error(Errc::DimensionMismatch, "quota vector size does not match slice count");
  }
  double sum = 0.0;
  for (double q : quota) {
    if (!(q >= 0.0)) throw Error(Errc::QuotaOverflow, "quota entries must be nonnegative");
    sum += q;
  }
  if (sum > 1.0 + kTol) {
    throw Error(Errc::QuotaOverflow,
                "quotas sum to " + std::to_string(sum) + " on substrate " +
                    std::to_string(state.id.index));
  }
  state.current_quota.assign(quota.begin(), quota.end());
  return state;
}

LoadReport report(const SubstrateState& state, std::int64_t cycle) {
  LoadReport rep;
  rep.substrate = state.id;
  rep.cycle = cycle;
  rep.slices.resize(state.current_quota.size());
  for (size_t j = 0; j < state.current_quota.size(); ++j) {
    SliceLoad& sl = rep.slices[j];
    sl.avg_phy_rate = state.per_slice_phy_rate[j];
    sl.used_airtime = state.current_quota[j];
    sl.achieved_rate = sl.used_airtime * sl.avg_phy_rate;
    sl.usage_flag = sl.achieved_rate > 0.0;
    sl.requested_airtime =
        airtime_from_rates({state.prev_achieved_rate[j], sl.avg_phy_rate}).value();
  }
  return rep;
}

SubstrateState commit_report(SubstrateState state, const LoadReport& rep) {
  for (size_t j = 0; j < rep.slices.size() && j < state.prev_achieved_rate.size(); ++j) {
    state.prev_achieved_rate[j] = rep.slices[j].achieved_rate;
  }
  return state;
}

AllocationMatrix static_allocation(std::span<const double> bids,
                                   const std::vector<SubstrateId>& substrates,
                                   const Matrix& minima) {
  const int n_sub = static_cast<int>(substrates.size());
  const int n_sl = static_cast<int>(bids.size());
  if (n_sub == 0 || n_sl == 0) {
    throw Error(Errc::InvalidConfig, "static allocation needs substrates and slices");
  }
  AllocationMatrix t(n_sub, n_sl);
  double per_substrate_sum = 0.0;
  for (int j = 0; j < n_sl; ++j) {
    const double share = bids[j] / n_sub;
    per_substrate_sum += share;
    for (int k = 0; k < n_sub; ++k) t.at(k, j) = share;
  }
  if (per_substrate_sum > 1.0 + kTol) {
    throw Error(Errc::InfeasibleStatic,
                "equal split assigns " + std::to_string(per_substrate_sum) +
                    " airtime per substrate");
  }
  if (minima.rows() == n_sub && minima.cols() == n_sl) {
    for (int k = 0; k < n_sub; ++k) {
      for (int j = 0; j < n_sl; ++j) {
        if (t.at(k, j) < minima.at(k, j) - kTol) {
          throw Error(Errc::InfeasibleStatic,
                      "equal split " + std::to_string(t.at(k, j)) +
                          " is below the minimum reservation " +
                          std::to_string(minima.at(k, j)) + " at substrate " +
                          std::to_string(k) + ", slice " + std::to_string(j));
        }
      }
    }
  }
  return t;
}

}  // namespace airslice
