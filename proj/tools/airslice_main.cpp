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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "airslice/config.hpp"
#include "airslice/controller.hpp"
#include "airslice/metrics.hpp"
#include "airslice/nwpd.hpp"
#include "airslice/policy.hpp"

namespace fs = std::filesystem;

namespace {

/// Everything cmd_run needs, resolved from flags and an optional preset.
struct RunManifest {
  fs::path config_path;
  std::optional<fs::path> policy_path;
  std::optional<std::string> nwpd_url;
  fs::path out_dir;
  std::optional<std::uint64_t> seed_override;
  std::string preset;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw airslice::Error(airslice::Errc::IoError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

airslice::PolicyDocument load_policy_file(const fs::path& path) {
  auto doc = airslice::policy_from_json(read_file(path));
  airslice::ensure_valid(doc);
  return doc;
}

int cmd_run(const RunManifest& manifest) {
  airslice::ExperimentConfig config = airslice::load_config_file(manifest.config_path);
  if (manifest.seed_override) config.seed = *manifest.seed_override;

  airslice::PolicySource source;
  if (manifest.policy_path) {
    auto doc = load_policy_file(*manifest.policy_path);
    source = [doc]() { return doc; };
  } else {
    const std::string url = *manifest.nwpd_url;
    source = [url]() { return airslice::fetch_policy(url); };
  }

  const airslice::MetricsSeries series = airslice::run_experiment(config, source);
  const airslice::ImprovementStats stats = airslice::improvement_stats(series);

  fs::create_directories(manifest.out_dir);
  airslice::emit_weights_csv(series, manifest.out_dir / "weights.csv");
  airslice::emit_series_csv(series, manifest.out_dir / "revenue.csv");
  airslice::emit_cdf_csv(stats, manifest.out_dir / "cdf.csv");
  airslice::emit_summary_json(series, stats, manifest.out_dir / "summary.json");

  std::cout << "run" << (manifest.preset.empty() ? "" : " [" + manifest.preset + "]")
            << ": " << series.records.size() << " cycles, seed " << config.seed << "\n"
            << "  mean improvement: " << stats.mean_improvement_pct << "%\n"
            << "  best improvement: " << stats.best_improvement_pct << "%\n"
            << "  outputs: " << (manifest.out_dir / "weights.csv").string() << ", revenue.csv, "
            << "cdf.csv, summary.json\n";
  return 0;
}

int cmd_serve_nwpd(const fs::path& store_path, const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "listen address must be host:port\n";
    return 2;
  }
  const std::string host = listen.substr(0, colon);
  const int port = std::stoi(listen.substr(colon + 1));

  airslice::PolicyStore store(store_path);
  if (auto cur = store.current()) {
    std::cout << "loaded policy v" << cur->doc.version << " from " << store_path << "\n";
  } else {
    std::cout << "no policy installed yet (store: " << store_path << ")\n";
  }
  airslice::NwpdServer server(store);
  std::cout << "serving on http://" << host << ":" << port << "/policy\n";
  if (!server.listen(host, port)) {
    std::cerr << "failed to bind " << listen << "\n";
    return 1;
  }
  return 0;
}

int cmd_validate(const std::string& target) {
  std::string text;
  if (target.starts_with("http://")) {
    text = airslice::fetch_policy_text(target);
  } else {
    text = read_file(target);
  }
  const airslice::PolicyDocument doc = airslice::policy_from_json(text);
  const auto violations = airslice::validate_policy(doc);
  if (violations.empty()) {
    std::cout << "feasible: policy v" << doc.version << " with " << doc.substrates.size()
              << " substrate(s), " << doc.slices.size() << " slice(s)\n";
    return 0;
  }
  std::cout << "infeasible: " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) {
    std::cout << "  " << v.field << ": " << v.detail << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"airtime slicing control plane: seeded experiments, policy service, validation"};
  app.require_subcommand(1);

  RunManifest manifest;
  std::string config_flag, policy_flag, presets_dir = "configs/presets";
  std::uint64_t seed_flag = 0;
  std::string out_flag = "out";

  auto* run = app.add_subcommand("run", "run a seeded closed-loop experiment");
  run->add_option("--config", config_flag, "experiment config JSON");
  run->add_option("--policy", policy_flag, "policy JSON file (exclusive with --nwpd-url)");
  auto* url_opt = run->add_option("--nwpd-url", "NWPD endpoint, e.g. http://127.0.0.1:8080/policy");
  run->add_option("--out", out_flag, "output directory")->capture_default_str();
  auto* seed_opt = run->add_option("--seed", seed_flag, "override the config seed");
  run->add_option("--preset", manifest.preset,
                  "preset name under --presets-dir (unconstrained|constrained|priced)");
  run->add_option("--presets-dir", presets_dir, "preset root")->capture_default_str();

  fs::path store_path = "nwpd-store.json";
  std::string listen = "127.0.0.1:8080";
  auto* serve = app.add_subcommand("serve-nwpd", "serve the network-wide policy database");
  serve->add_option("--store", store_path, "policy store file")->capture_default_str();
  serve->add_option("--listen", listen, "host:port")->capture_default_str();

  std::string validate_target;
  auto* validate = app.add_subcommand("validate", "check a policy file or NWPD URL");
  validate->add_option("target", validate_target, "policy path or http:// URL")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!manifest.preset.empty()) {
        const fs::path base = fs::path(presets_dir) / manifest.preset;
        if (config_flag.empty()) config_flag = (base / "config.json").string();
        if (policy_flag.empty() && url_opt->count() == 0) {
          policy_flag = (base / "policy.json").string();
        }
      }
      if (config_flag.empty()) {
        std::cerr << "run: need --config or --preset\n";
        return 2;
      }
      manifest.config_path = config_flag;
      if (!policy_flag.empty()) manifest.policy_path = policy_flag;
      if (url_opt->count() > 0) manifest.nwpd_url = url_opt->as<std::string>();
      if (manifest.policy_path.has_value() == manifest.nwpd_url.has_value()) {
        std::cerr << "run: exactly one of --policy or --nwpd-url must be given\n";
        return 2;
      }
      manifest.out_dir = out_flag;
      if (seed_opt->count() > 0) manifest.seed_override = seed_flag;
      return cmd_run(manifest);
    }
    if (serve->parsed()) {
      if (const char* env = std::getenv("AIRSLICE_NWPD_STORE")) store_path = env;
      return cmd_serve_nwpd(store_path, listen);
    }
    if (validate->parsed()) {
      return cmd_validate(validate_target);
    }
  } catch (const airslice::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
