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

#include "airslice/airtime.hpp"

#include <algorithm>
#include <cmath>

namespace airslice {

AirtimeFraction AirtimeFraction::checked(double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw Error(Errc::InvalidConfig,
                "airtime fraction must lie in [0, 1], got " + std::to_string(v));
  }
  return AirtimeFraction(v);
}

AirtimeFraction AirtimeFraction::clamped(double v) {
  if (std::isnan(v)) return AirtimeFraction(0.0);
  return AirtimeFraction(std::clamp(v, 0.0, 1.0));
}

AirtimeFraction airtime_from_blocks(ResourceBlockCount allocated,
                                    std::span<const ResourceBlockCount> all_slices) {
  std::uint64_t total = 0;
  for (const auto& s : all_slices) total += s.allocated;
  if (total == 0) {
    throw Error(Errc::ZeroTotalBlocks, "no resource blocks scheduled across slices");
  }
  return AirtimeFraction::checked(static_cast<double>(allocated.allocated) /
                                  static_cast<double>(total));
}

AirtimeFraction airtime_from_rates(RatePair rates) {
  if (!(rates.phy_rate > 0.0)) {
    throw Error(Errc::InvalidPhyRate,
                "phy rate must be positive, got " + std::to_string(rates.phy_rate));
  }
  return AirtimeFraction::clamped(rates.achieved_rate / rates.phy_rate);
}

AirtimeFraction normalize_ofdma(AirtimeFraction raw_airtime,
                                std::uint32_t subcarriers_allotted,
                                std::uint32_t subcarriers_total) {
  if (subcarriers_allotted == 0 || subcarriers_allotted > subcarriers_total) {
    throw Error(Errc::InvalidSubcarrierCount,
                "allotted subcarriers must be in (0, total], got " +
                    std::to_string(subcarriers_allotted) + " of " +
                    std::to_string(subcarriers_total));
  }
  return AirtimeFraction::checked(raw_airtime.value() *
                                  (static_cast<double>(subcarriers_allotted) /
                                   static_cast<double>(subcarriers_total)));
}

AirtimeFraction normalize_mu_mimo(AirtimeFraction raw_airtime,
                                  std::uint32_t simultaneous_streams) {
  if (simultaneous_streams == 0) {
    throw Error(Errc::InvalidStreamCount, "stream count must be at least 1");
  }
  return AirtimeFraction::checked(raw_airtime.value() /
                                  static_cast<double>(simultaneous_streams));
}

}  // namespace airslice
