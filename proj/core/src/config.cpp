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

#include "airslice/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace airslice {

namespace {
using nlohmann::json;
}

std::vector<SubstrateRef> substrate_layout(const ExperimentConfig& c) {
  std::vector<SubstrateRef> out;
  out.reserve(c.n_btss + c.n_aps);
  for (int i = 0; i < c.n_btss; ++i) {
    out.push_back({"bts" + std::to_string(i), SubstrateKind::ScheduledBasestation});
  }
  for (int i = 0; i < c.n_aps; ++i) {
    out.push_back({"ap" + std::to_string(i), SubstrateKind::ContentionAccessPoint});
  }
  return out;
}

std::vector<SubstrateId> substrate_ids(const ExperimentConfig& c) {
  std::vector<SubstrateId> out;
  out.reserve(c.n_btss + c.n_aps);
  for (int i = 0; i < c.n_btss + c.n_aps; ++i) {
    out.push_back({i, i < c.n_btss ? SubstrateKind::ScheduledBasestation
                                   : SubstrateKind::ContentionAccessPoint});
  }
  return out;
}

namespace {

Matrix config_minima(const ExperimentConfig& c) {
  const auto layout = substrate_layout(c);
  Matrix m(static_cast<int>(layout.size()), c.slices_per_substrate);
  for (const auto& r : c.minima) {
    int k = -1;
    for (size_t i = 0; i < layout.size(); ++i) {
      if (layout[i].name == r.substrate) k = static_cast<int>(i);
    }
    if (k < 0) {
      throw Error(Errc::InvalidConfig, "minima name unknown substrate '" + r.substrate + "'");
    }
    if (r.slice < 0 || r.slice >= c.slices_per_substrate) {
      throw Error(Errc::InvalidConfig,
                  "minima slice index " + std::to_string(r.slice) + " out of range");
    }
    m.at(k, r.slice) = r.min_airtime;
  }
  return m;
}

}  // namespace

void validate_config(const ExperimentConfig& c) {
  if (c.n_cycles < 0) throw Error(Errc::InvalidConfig, "n_cycles must be nonnegative");
  if (c.n_btss < 0 || c.n_aps < 0 || c.n_btss + c.n_aps == 0) {
    throw Error(Errc::InvalidConfig, "experiment needs at least one substrate");
  }
  if (c.slices_per_substrate <= 0) {
    throw Error(Errc::InvalidConfig, "slices_per_substrate must be positive");
  }
  if (!(c.bts_peak_rate > 0.0) || !(c.ap_peak_rate > 0.0)) {
    throw Error(Errc::InvalidConfig, "peak rates must be positive");
  }
  if (static_cast<int>(c.bids.size()) != c.slices_per_substrate) {
    throw Error(Errc::InvalidConfig, "bids must have one entry per slice");
  }
  for (double b : c.bids) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
      throw Error(Errc::InvalidConfig, "bids must be nonnegative");
    }
  }
  if (c.load_model.kind == LoadModel::Kind::Uniform &&
      (!(c.load_model.min_fraction > 0.0) || c.load_model.min_fraction > 1.0)) {
    throw Error(Errc::InvalidConfig, "load_model.min_fraction must lie in (0, 1]");
  }
  if (c.load_model.kind == LoadModel::Kind::Constant && c.load_model.rate < 0.0) {
    throw Error(Errc::InvalidConfig, "load_model.rate must be nonnegative");
  }
  config_minima(c);  // resolves names and ranges
}

AllocationMatrix static_allocation(const ExperimentConfig& c) {
  validate_config(c);
  return static_allocation(c.bids, substrate_ids(c), config_minima(c));
}

namespace {

json load_model_to_json(const LoadModel& m) {
  if (m.kind == LoadModel::Kind::Constant) {
    return {{"kind", "constant"}, {"rate", m.rate}};
  }
  return {{"kind", "uniform"}, {"min_fraction", m.min_fraction}};
}

LoadModel load_model_from_json(const json& j) {
  LoadModel m;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    m.kind = LoadModel::Kind::Uniform;
    if (j.contains("min_fraction")) m.min_fraction = j.at("min_fraction").get<double>();
  } else if (kind == "constant") {
    m.kind = LoadModel::Kind::Constant;
    if (j.contains("rate")) m.rate = j.at("rate").get<double>();
  } else {
    throw Error(Errc::InvalidConfig, "load_model.kind must be 'uniform' or 'constant'");
  }
  return m;
}

json config_to_canonical_json(const ExperimentConfig& c) {
  json j;
  j["n_cycles"] = c.n_cycles;
  j["seed"] = c.seed;
  j["n_btss"] = c.n_btss;
  j["n_aps"] = c.n_aps;
  j["slices_per_substrate"] = c.slices_per_substrate;
  j["bts_peak_rate_mbps"] = c.bts_peak_rate;
  j["ap_peak_rate_mbps"] = c.ap_peak_rate;
  j["bids"] = c.bids;
  j["minima"] = json::array();
  for (const auto& r : c.minima) {
    j["minima"].push_back(
        {{"substrate", r.substrate}, {"slice", r.slice}, {"min_airtime", r.min_airtime}});
  }
  j["pricing_mode"] = std::string(to_string(c.pricing_mode));
  j["price_weights"] = json::object();
  for (const auto& [name, w] : c.price_weights) j["price_weights"][name] = w;
  j["load_model"] = load_model_to_json(c.load_model);
  return j;
}

}  // namespace

std::string config_digest(const ExperimentConfig& c) {
  const std::string canonical = config_to_canonical_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::InvalidConfig,
                "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  ExperimentConfig c;
  try {
    if (j.contains("n_cycles")) c.n_cycles = j.at("n_cycles").get<std::int64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("n_btss")) c.n_btss = j.at("n_btss").get<int>();
    if (j.contains("n_aps")) c.n_aps = j.at("n_aps").get<int>();
    if (j.contains("slices_per_substrate")) {
      c.slices_per_substrate = j.at("slices_per_substrate").get<int>();
    }
    if (j.contains("bts_peak_rate_mbps")) {
      c.bts_peak_rate = j.at("bts_peak_rate_mbps").get<double>();
    }
    if (j.contains("ap_peak_rate_mbps")) c.ap_peak_rate = j.at("ap_peak_rate_mbps").get<double>();
    c.bids = j.at("bids").get<std::vector<double>>();
    if (j.contains("minima")) {
      for (const auto& jm : j.at("minima")) {
        c.minima.push_back({jm.at("substrate").get<std::string>(), jm.at("slice").get<int>(),
                            jm.at("min_airtime").get<double>()});
      }
    }
    if (j.contains("pricing_mode")) {
      const auto mode = j.at("pricing_mode").get<std::string>();
      if (mode == "rate-maximization") {
        c.pricing_mode = PricingMode::RateMaximization;
      } else if (mode == "weighted-revenue") {
        c.pricing_mode = PricingMode::WeightedRevenue;
      } else {
        throw Error(Errc::InvalidConfig, "unknown pricing_mode '" + mode + "'");
      }
    }
    if (j.contains("price_weights")) {
      for (const auto& [key, val] : j.at("price_weights").items()) {
        c.price_weights[key] = val.get<double>();
      }
    }
    if (j.contains("load_model")) c.load_model = load_model_from_json(j.at("load_model"));
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("config: ") + e.what());
  }
  validate_config(c);
  return c;
}

std::string config_to_json(const ExperimentConfig& c, int indent) {
  return config_to_canonical_json(c).dump(indent);
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

}  // namespace airslice
