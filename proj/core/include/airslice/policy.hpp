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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "airslice/problem.hpp"

namespace airslice {

enum class PricingMode { RateMaximization, WeightedRevenue };
enum class CoefficientSource { ReportedPhyRate, Fixed };

std::string_view to_string(PricingMode mode);
std::string_view to_string(CoefficientSource source);

/// A substrate as the policy names it, e.g. {"bts0", scheduled}.
struct SubstrateRef {
  std::string name;
  SubstrateKind kind = SubstrateKind::ScheduledBasestation;

  bool operator==(const SubstrateRef&) const = default;
};

/// One slice's purchased airtime: a total bid across all substrates plus
/// optional per-kind quotas layered on top of it.
struct SliceSpec {
  std::string name;
  double bid = 0.0;
  std::optional<double> quota_scheduled;
  std::optional<double> quota_contention;

  bool operator==(const SliceSpec&) const = default;
};

/// Minimum airtime reservation for one (substrate, slice) pair.
struct MinimumReservation {
  std::string substrate;
  int slice = 0;
  double min_airtime = 0.0;

  bool operator==(const MinimumReservation&) const = default;
};

/// Operator policy served by the network-wide policy database: what each
/// slice bought, the reservations it holds, how utility coefficients are
/// sourced, and how substrates are priced.
struct PolicyDocument {
  std::int64_t version = 0;
  std::vector<SubstrateRef> substrates;
  std::vector<SliceSpec> slices;
  std::vector<MinimumReservation> minima;

  /// Only "linear-constant" utilities are supported: the per-cycle revenue
  /// coefficient is a constant refreshed from feedback or pinned by policy.
  std::string utility_form = "linear-constant";
  CoefficientSource coefficient_source = CoefficientSource::ReportedPhyRate;
  /// substrates x slices, used when coefficient_source == Fixed.
  Matrix fixed_coefficients;

  PricingMode pricing_mode = PricingMode::RateMaximization;
  /// Keyed by substrate name, with "bts"/"ap" accepted as kind-wide
  /// defaults. Missing entries weigh 1.
  std::map<std::string, double> price_weights;

  int control_period = 1;
  int policy_refresh_period = 100;

  bool operator==(const PolicyDocument&) const = default;

  int n_slices() const { return static_cast<int>(slices.size()); }
  int substrate_index(const std::string& name) const;  // -1 when absent
};

/// Effective revenue weight of one substrate under the policy.
double price_weight_for(const PolicyDocument& policy, const SubstrateRef& substrate);

/// Minimum reservations as a substrates x slices matrix in the policy's
/// substrate order. Throws ValidationFailed on unknown substrate names or
/// slice indices.
Matrix minima_matrix(const PolicyDocument& policy);

struct PolicyViolation {
  std::string field;
  std::string detail;
};

/// Structural and feasibility validation. Empty result means the document
/// is valid: sums of reservations fit every substrate and every slice
/// budget, bids do not oversubscribe total airtime, weights and bids are
/// nonnegative, and the utility form is supported.
std::vector<PolicyViolation> validate_policy(const PolicyDocument& policy);

/// Throws ValidationFailed carrying the first violation.
void ensure_valid(const PolicyDocument& policy);

/// JSON (de)serialization of the wire/store format. parse throws
/// MalformedPolicy with the offending field or parse location.
PolicyDocument policy_from_json(std::string_view text);
std::string policy_to_json(const PolicyDocument& policy, int indent = 2);

}  // namespace airslice
