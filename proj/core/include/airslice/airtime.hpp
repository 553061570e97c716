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

#include "airslice/errors.hpp"

namespace airslice {

/// Fraction of a radio's transmission time in [0, 1]. The single control
/// metric shared by scheduled and contention MACs: on a scheduled MAC it is
/// the resource-block share, on any MAC it equals achieved rate over the
/// slice's average PHY rate.
class AirtimeFraction {
 public:
  AirtimeFraction() = default;

  /// Throws InvalidConfig if v is outside [0, 1] or not finite.
  static AirtimeFraction checked(double v);

  /// Clamps v into [0, 1]; NaN maps to 0.
  static AirtimeFraction clamped(double v);

  double value() const noexcept { return value_; }

  auto operator<=>(const AirtimeFraction&) const = default;

 private:
  explicit AirtimeFraction(double v) : value_(v) {}
  double value_ = 0.0;
};

/// Count of MAC scheduler resource blocks granted to one slice.
struct ResourceBlockCount {
  std::uint64_t allocated = 0;
};

/// Slice aggregate throughput next to its assigned average PHY rate, in Mbps.
struct RatePair {
  double achieved_rate = 0.0;
  double phy_rate = 0.0;
};

/// Airtime share of a slice on a scheduled MAC: allocated blocks over the
/// total across all slices. Throws ZeroTotalBlocks when the total is zero.
AirtimeFraction airtime_from_blocks(ResourceBlockCount allocated,
                                    std::span<const ResourceBlockCount> all_slices);

/// Airtime share from rate feedback: achieved over PHY rate, clamped to
/// [0, 1] (measurement jitter can report achieved slightly above PHY).
/// Throws InvalidPhyRate when phy_rate <= 0.
AirtimeFraction airtime_from_rates(RatePair rates);

/// Scales raw airtime by the fraction of OFDMA subcarriers allotted
/// (time-averaged over the reporting window, supplied by the caller).
/// Throws InvalidSubcarrierCount when allotted = 0 or allotted > total.
AirtimeFraction normalize_ofdma(AirtimeFraction raw_airtime,
                                std::uint32_t subcarriers_allotted,
                                std::uint32_t subcarriers_total);

/// Divides raw airtime by the number of simultaneous MU-MIMO streams so MU
/// and non-MU transmissions account equally. Throws InvalidStreamCount
/// when simultaneous_streams = 0.
AirtimeFraction normalize_mu_mimo(AirtimeFraction raw_airtime,
                                  std::uint32_t simultaneous_streams);

}  // namespace airslice
