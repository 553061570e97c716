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

#include "airslice/policy.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace airslice {

namespace {
constexpr double kTol = 1e-9;
using nlohmann::json;
}  // namespace

std::string_view to_string(PricingMode mode) {
  switch (mode) {
    case PricingMode::RateMaximization: return "rate-maximization";
    case PricingMode::WeightedRevenue: return "weighted-revenue";
  }
  return "unknown";
}

std::string_view to_string(CoefficientSource source) {
  switch (source) {
    case CoefficientSource::ReportedPhyRate: return "reported-phy-rate";
    case CoefficientSource::Fixed: return "fixed";
  }
  return "unknown";
}

int PolicyDocument::substrate_index(const std::string& name) const {
  for (size_t i = 0; i < substrates.size(); ++i) {
    if (substrates[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

double price_weight_for(const PolicyDocument& policy, const SubstrateRef& substrate) {
  if (auto it = policy.price_weights.find(substrate.name); it != policy.price_weights.end()) {
    return it->second;
  }
  if (auto it = policy.price_weights.find(std::string(to_string(substrate.kind)));
      it != policy.price_weights.end()) {
    return it->second;
  }
  return 1.0;
}

Matrix minima_matrix(const PolicyDocument& policy) {
  Matrix m(static_cast<int>(policy.substrates.size()), policy.n_slices());
  for (const auto& r : policy.minima) {
    const int k = policy.substrate_index(r.substrate);
    if (k < 0) {
      throw Error(Errc::ValidationFailed, "minima name unknown substrate '" + r.substrate + "'");
    }
    if (r.slice < 0 || r.slice >= policy.n_slices()) {
      throw Error(Errc::ValidationFailed,
                  "minima slice index " + std::to_string(r.slice) + " out of range");
    }
    m.at(k, r.slice) = r.min_airtime;
  }
  return m;
}

std::vector<PolicyViolation> validate_policy(const PolicyDocument& p) {
  std::vector<PolicyViolation> out;
  auto bad = [&out](std::string field, std::string detail) {
    out.push_back({std::move(field), std::move(detail)});
  };

  if (p.version < 0) bad("version", "must be nonnegative");
  if (p.substrates.empty()) bad("substrates", "at least one substrate required");
  if (p.slices.empty()) bad("slices", "at least one slice required");
  if (p.utility_form != "linear-constant") {
    bad("utility.form", "unsupported utility form '" + p.utility_form + "'");
  }
  if (p.control_period < 1) bad("control_period", "must be at least 1");
  if (p.policy_refresh_period < 1) bad("policy_refresh_period", "must be at least 1");

  std::set<std::string> names;
  for (const auto& s : p.substrates) {
    if (!names.insert(s.name).second) bad("substrates", "duplicate substrate '" + s.name + "'");
  }
  std::set<std::string> slice_names;
  double bid_total = 0.0;
  for (size_t j = 0; j < p.slices.size(); ++j) {
    const auto& sl = p.slices[j];
    if (!slice_names.insert(sl.name).second) {
      bad("slices", "duplicate slice '" + sl.name + "'");
    }
    if (!(sl.bid >= 0.0) || !std::isfinite(sl.bid)) {
      bad("slices[" + std::to_string(j) + "].bid", "must be a nonnegative number");
      continue;
    }
    bid_total += sl.bid;
    if (sl.quota_scheduled && !(*sl.quota_scheduled >= 0.0)) {
      bad("slices[" + std::to_string(j) + "].quota_bts", "must be nonnegative");
    }
    if (sl.quota_contention && !(*sl.quota_contention >= 0.0)) {
      bad("slices[" + std::to_string(j) + "].quota_ap", "must be nonnegative");
    }
  }
  if (bid_total > static_cast<double>(p.substrates.size()) + kTol) {
    bad("slices", "bids sum to " + std::to_string(bid_total) +
                      ", exceeding the total airtime of " +
                      std::to_string(p.substrates.size()) + " substrate(s)");
  }
  for (const auto& [name, w] : p.price_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      bad("price_weights." + name, "must be a nonnegative number");
    }
  }
  if (p.coefficient_source == CoefficientSource::Fixed &&
      (p.fixed_coefficients.rows() != static_cast<int>(p.substrates.size()) ||
       p.fixed_coefficients.cols() != p.n_slices())) {
    bad("fixed_coefficients", "must be substrates x slices when coefficient source is fixed");
  }

  // Reservation feasibility: delta is the least point of the polytope, so
  // these sums decide emptiness.
  std::vector<double> per_substrate(p.substrates.size(), 0.0);
  std::vector<double> per_slice_total(p.slices.size(), 0.0);
  std::vector<double> per_slice_scheduled(p.slices.size(), 0.0);
  std::vector<double> per_slice_contention(p.slices.size(), 0.0);
  for (const auto& r : p.minima) {
    const int k = p.substrate_index(r.substrate);
    if (k < 0) {
      bad("minima", "unknown substrate '" + r.substrate + "'");
      continue;
    }
    if (r.slice < 0 || r.slice >= p.n_slices()) {
      bad("minima", "slice index " + std::to_string(r.slice) + " out of range");
      continue;
    }
    if (!(r.min_airtime >= 0.0) || r.min_airtime > 1.0 + kTol) {
      bad("minima", "reservation at '" + r.substrate + "' must lie in [0, 1]");
      continue;
    }
    per_substrate[k] += r.min_airtime;
    per_slice_total[r.slice] += r.min_airtime;
    if (p.substrates[k].kind == SubstrateKind::ScheduledBasestation) {
      per_slice_scheduled[r.slice] += r.min_airtime;
    } else {
      per_slice_contention[r.slice] += r.min_airtime;
    }
  }
  for (size_t k = 0; k < p.substrates.size(); ++k) {
    if (per_substrate[k] > 1.0 + kTol) {
      bad("minima", "reservations on substrate '" + p.substrates[k].name + "' sum to " +
                        std::to_string(per_substrate[k]) + " > 1");
    }
  }
  for (size_t j = 0; j < p.slices.size(); ++j) {
    const auto& sl = p.slices[j];
    if (per_slice_total[j] > sl.bid + kTol) {
      bad("minima", "reservations for slice '" + sl.name + "' sum to " +
                        std::to_string(per_slice_total[j]) + ", above its bid " +
                        std::to_string(sl.bid));
    }
    if (sl.quota_scheduled && per_slice_scheduled[j] > *sl.quota_scheduled + kTol) {
      bad("minima", "basestation reservations for slice '" + sl.name + "' exceed quota " +
                        std::to_string(*sl.quota_scheduled));
    }
    if (sl.quota_contention && per_slice_contention[j] > *sl.quota_contention + kTol) {
      bad("minima", "access-point reservations for slice '" + sl.name + "' exceed quota " +
                        std::to_string(*sl.quota_contention));
    }
  }
  return out;
}

void ensure_valid(const PolicyDocument& policy) {
  const auto violations = validate_policy(policy);
  if (!violations.empty()) {
    throw Error(Errc::ValidationFailed,
                violations.front().field + ": " + violations.front().detail +
                    (violations.size() > 1
                         ? " (+" + std::to_string(violations.size() - 1) + " more)"
                         : ""));
  }
}

namespace {

SubstrateKind kind_from_string(const std::string& s, const std::string& field) {
  if (s == "bts") return SubstrateKind::ScheduledBasestation;
  if (s == "ap") return SubstrateKind::ContentionAccessPoint;
  throw Error(Errc::MalformedPolicy, field + ": unknown substrate kind '" + s + "'");
}

PricingMode pricing_from_string(const std::string& s) {
  if (s == "rate-maximization") return PricingMode::RateMaximization;
  if (s == "weighted-revenue") return PricingMode::WeightedRevenue;
  throw Error(Errc::MalformedPolicy, "pricing_mode: unknown mode '" + s + "'");
}

CoefficientSource source_from_string(const std::string& s) {
  if (s == "reported-phy-rate") return CoefficientSource::ReportedPhyRate;
  if (s == "fixed") return CoefficientSource::Fixed;
  throw Error(Errc::MalformedPolicy, "utility.coefficient_source: unknown source '" + s + "'");
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(Errc::MalformedPolicy, std::string("missing required field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedPolicy, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

PolicyDocument policy_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::MalformedPolicy,
                "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw Error(Errc::MalformedPolicy, "policy must be a JSON object");

  PolicyDocument p;
  p.version = require<std::int64_t>(j, "version");
  for (const auto& js : require<json>(j, "substrates")) {
    SubstrateRef ref;
    ref.name = require<std::string>(js, "name");
    ref.kind = kind_from_string(require<std::string>(js, "kind"), "substrates.kind");
    p.substrates.push_back(std::move(ref));
  }
  for (const auto& js : require<json>(j, "slices")) {
    SliceSpec s;
    s.name = require<std::string>(js, "name");
    s.bid = require<double>(js, "bid");
    if (js.contains("quota_bts") && !js.at("quota_bts").is_null()) {
      s.quota_scheduled = js.at("quota_bts").get<double>();
    }
    if (js.contains("quota_ap") && !js.at("quota_ap").is_null()) {
      s.quota_contention = js.at("quota_ap").get<double>();
    }
    p.slices.push_back(std::move(s));
  }
  if (j.contains("minima")) {
    for (const auto& jm : j.at("minima")) {
      MinimumReservation r;
      r.substrate = require<std::string>(jm, "substrate");
      r.slice = require<int>(jm, "slice");
      r.min_airtime = require<double>(jm, "min_airtime");
      p.minima.push_back(std::move(r));
    }
  }
  if (j.contains("utility")) {
    const json& ju = j.at("utility");
    if (ju.contains("form")) p.utility_form = ju.at("form").get<std::string>();
    if (ju.contains("coefficient_source")) {
      p.coefficient_source = source_from_string(ju.at("coefficient_source").get<std::string>());
    }
    if (p.coefficient_source == CoefficientSource::Fixed) {
      const auto rows = require<std::vector<std::vector<double>>>(ju, "fixed_coefficients");
      const int n_sl = rows.empty() ? 0 : static_cast<int>(rows.front().size());
      p.fixed_coefficients = Matrix(static_cast<int>(rows.size()), n_sl);
      for (size_t k = 0; k < rows.size(); ++k) {
        if (static_cast<int>(rows[k].size()) != n_sl) {
          throw Error(Errc::MalformedPolicy, "fixed_coefficients rows have uneven lengths");
        }
        for (int c = 0; c < n_sl; ++c) p.fixed_coefficients.at(static_cast<int>(k), c) = rows[k][c];
      }
    }
  }
  if (j.contains("pricing_mode")) {
    p.pricing_mode = pricing_from_string(j.at("pricing_mode").get<std::string>());
  }
  if (j.contains("price_weights")) {
    for (const auto& [key, val] : j.at("price_weights").items()) {
      if (!val.is_number()) {
        throw Error(Errc::MalformedPolicy, "price_weights." + key + " must be a number");
      }
      p.price_weights[key] = val.get<double>();
    }
  }
  if (j.contains("control_period")) p.control_period = j.at("control_period").get<int>();
  if (j.contains("policy_refresh_period")) {
    p.policy_refresh_period = j.at("policy_refresh_period").get<int>();
  }
  return p;
}

std::string policy_to_json(const PolicyDocument& p, int indent) {
  json j;
  j["version"] = p.version;
  j["substrates"] = json::array();
  for (const auto& s : p.substrates) {
    j["substrates"].push_back({{"name", s.name}, {"kind", std::string(to_string(s.kind))}});
  }
  j["slices"] = json::array();
  for (const auto& s : p.slices) {
    json js = {{"name", s.name}, {"bid", s.bid}};
    if (s.quota_scheduled) js["quota_bts"] = *s.quota_scheduled;
    if (s.quota_contention) js["quota_ap"] = *s.quota_contention;
    j["slices"].push_back(std::move(js));
  }
  j["minima"] = json::array();
  for (const auto& r : p.minima) {
    j["minima"].push_back(
        {{"substrate", r.substrate}, {"slice", r.slice}, {"min_airtime", r.min_airtime}});
  }
  j["utility"] = {{"form", p.utility_form},
                  {"coefficient_source", std::string(to_string(p.coefficient_source))}};
  if (p.coefficient_source == CoefficientSource::Fixed) {
    json rows = json::array();
    for (int k = 0; k < p.fixed_coefficients.rows(); ++k) {
      json row = json::array();
      for (int c = 0; c < p.fixed_coefficients.cols(); ++c) {
        row.push_back(p.fixed_coefficients.at(k, c));
      }
      rows.push_back(std::move(row));
    }
    j["utility"]["fixed_coefficients"] = std::move(rows);
  }
  j["pricing_mode"] = std::string(to_string(p.pricing_mode));
  j["price_weights"] = json::object();
  for (const auto& [name, w] : p.price_weights) j["price_weights"][name] = w;
  j["control_period"] = p.control_period;
  j["policy_refresh_period"] = p.policy_refresh_period;
  return j.dump(indent);
}

}  // namespace airslice
