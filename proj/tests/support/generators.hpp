// Shared generators for property tests: random feasible allocation problems
// and temp-dir scaffolding. Test-only; independent of the solver internals.
#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "airslice/policy.hpp"
#include "airslice/problem.hpp"
#include "airslice/random.hpp"

namespace testsupport {

/// Feasible-by-construction random instance: minima are drawn first and
/// budgets are placed at or above the implied sums, so the polytope is
/// never empty.
inline airslice::AllocationProblem random_problem(airslice::RandomStream& rng, int n_sub,
                                                  int n_sl) {
  using namespace airslice;
  AllocationProblem p;
  p.n_slices = n_sl;
  for (int k = 0; k < n_sub; ++k) {
    const auto kind = rng.uniform01() < 0.5 ? SubstrateKind::ScheduledBasestation
                                            : SubstrateKind::ContentionAccessPoint;
    p.substrates.push_back({k, kind});
  }
  p.minima = Matrix(n_sub, n_sl);
  p.utility_coeff = Matrix(n_sub, n_sl);
  const bool with_minima = rng.uniform01() < 0.5;
  for (int k = 0; k < n_sub; ++k) {
    for (int j = 0; j < n_sl; ++j) {
      p.utility_coeff.at(k, j) = rng.uniform(1.0, 40.0);
      if (with_minima) p.minima.at(k, j) = rng.uniform(0.0, 0.8 / n_sl);
    }
  }
  p.price_weight.resize(n_sub);
  const bool weighted = rng.uniform01() < 0.5;
  for (int k = 0; k < n_sub; ++k) {
    p.price_weight[k] = weighted ? rng.uniform(0.5, 2.0) : 1.0;
  }

  p.bid.resize(n_sl);
  p.quota_scheduled.resize(n_sl);
  p.quota_contention.resize(n_sl);
  for (int j = 0; j < n_sl; ++j) {
    double total = 0.0, scheduled = 0.0, contention = 0.0;
    for (int k = 0; k < n_sub; ++k) {
      total += p.minima.at(k, j);
      if (p.substrates[k].kind == SubstrateKind::ScheduledBasestation) {
        scheduled += p.minima.at(k, j);
      } else {
        contention += p.minima.at(k, j);
      }
    }
    if (rng.uniform01() < 0.8) p.bid[j] = total + rng.uniform(0.1, 1.5);
    if (rng.uniform01() < 0.3) p.quota_scheduled[j] = scheduled + rng.uniform(0.1, 1.0);
    if (rng.uniform01() < 0.3) p.quota_contention[j] = contention + rng.uniform(0.1, 1.0);
  }
  return p;
}

/// Dimensions with at most `max_vars` decision variables.
inline std::pair<int, int> random_dims(airslice::RandomStream& rng, int max_vars = 6) {
  static const std::vector<std::pair<int, int>> shapes = {
      {1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 2},
      {1, 4}, {4, 1}, {1, 5}, {5, 1}, {1, 6}, {6, 1}, {2, 3}, {3, 2}};
  for (;;) {
    const auto& s = shapes[static_cast<size_t>(rng.uniform01() * shapes.size())];
    if (s.first * s.second <= max_vars) return s;
  }
}

/// Valid two-substrate, two-slice policy document for store/server tests.
inline airslice::PolicyDocument sample_policy(std::int64_t version = 1) {
  airslice::PolicyDocument p;
  p.version = version;
  p.substrates = {{"bts0", airslice::SubstrateKind::ScheduledBasestation},
                  {"ap0", airslice::SubstrateKind::ContentionAccessPoint}};
  p.slices = {{"slc1", 1.4, std::nullopt, std::nullopt},
              {"slc2", 0.6, std::nullopt, std::nullopt}};
  return p;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 salt{std::random_device{}()};
    dir_ = std::filesystem::temp_directory_path() /
           ("airslice_" + tag + "_" + std::to_string(salt()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  const std::filesystem::path& path() const { return dir_; }
  std::filesystem::path operator/(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

}  // namespace testsupport
