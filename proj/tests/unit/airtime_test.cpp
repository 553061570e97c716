#include <doctest.h>

#include <cmath>
#include <vector>

#include "airslice/airtime.hpp"
#include "airslice/random.hpp"

using namespace airslice;

namespace {

std::vector<ResourceBlockCount> blocks(std::initializer_list<std::uint64_t> vals) {
  std::vector<ResourceBlockCount> out;
  for (auto v : vals) out.push_back({v});
  return out;
}

}  // namespace

TEST_CASE("airtime from resource blocks") {
  auto all = blocks({50, 50});
  CHECK(airtime_from_blocks({50}, all).value() == doctest::Approx(0.5));

  all = blocks({0, 100});
  CHECK(airtime_from_blocks({0}, all).value() == 0.0);

  all = blocks({30, 50, 20});
  CHECK(airtime_from_blocks({30}, all).value() == doctest::Approx(0.3));

  all = blocks({0, 0});
  CHECK_THROWS_WITH_AS(airtime_from_blocks({0}, all), doctest::Contains("ZeroTotalBlocks"),
                       Error);
}

TEST_CASE("airtime from rates") {
  CHECK(airtime_from_rates({18.0, 36.0}).value() == doctest::Approx(0.5));
  CHECK(airtime_from_rates({0.0, 20.0}).value() == 0.0);
  CHECK(airtime_from_rates({15.0, 20.0}).value() == doctest::Approx(0.75));

  SUBCASE("noisy feedback above the phy rate clamps to 1") {
    CHECK(airtime_from_rates({21.0, 20.0}).value() == 1.0);
  }
  SUBCASE("nonpositive phy rate rejected") {
    CHECK_THROWS_AS(airtime_from_rates({1.0, 0.0}), Error);
    CHECK_THROWS_AS(airtime_from_rates({1.0, -3.0}), Error);
  }
}

TEST_CASE("ofdma normalization") {
  const auto raw = AirtimeFraction::checked(0.8);
  CHECK(normalize_ofdma(AirtimeFraction::checked(1.0), 52, 52).value() == 1.0);
  CHECK(normalize_ofdma(raw, 26, 52).value() == doctest::Approx(0.4));
  CHECK(normalize_ofdma(AirtimeFraction::checked(0.0), 13, 52).value() == 0.0);

  CHECK_THROWS_AS(normalize_ofdma(raw, 0, 52), Error);
  CHECK_THROWS_AS(normalize_ofdma(raw, 53, 52), Error);
}

TEST_CASE("mu-mimo normalization") {
  const auto raw = AirtimeFraction::checked(0.6);
  CHECK(normalize_mu_mimo(raw, 1).value() == 0.6);
  CHECK(normalize_mu_mimo(raw, 2).value() == doctest::Approx(0.3));
  CHECK(normalize_mu_mimo(AirtimeFraction::checked(1.0), 4).value() == doctest::Approx(0.25));
  CHECK_THROWS_AS(normalize_mu_mimo(raw, 0), Error);
}

TEST_CASE("block shares of all slices sum to exactly 1") {
  RandomStream rng(101);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 6);
    std::vector<ResourceBlockCount> all;
    for (int i = 0; i < n; ++i) {
      all.push_back({1 + static_cast<std::uint64_t>(rng.uniform01() * 1000)});
    }
    double sum = 0.0;
    for (const auto& b : all) sum += airtime_from_blocks(b, all).value();
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("block-based and rate-based airtime agree on consistent instances") {
  RandomStream rng(102);
  for (int it = 0; it < 500; ++it) {
    const int n = 1 + static_cast<int>(rng.uniform01() * 5);
    std::vector<ResourceBlockCount> all;
    std::uint64_t total = 0;
    for (int i = 0; i < n; ++i) {
      all.push_back({static_cast<std::uint64_t>(rng.uniform01() * 500)});
      total += all.back().allocated;
    }
    if (total == 0) continue;
    const double phy = rng.uniform(1.0, 40.0);
    for (const auto& b : all) {
      const double by_blocks = airtime_from_blocks(b, all).value();
      const double achieved = phy * static_cast<double>(b.allocated) / static_cast<double>(total);
      const double by_rates = airtime_from_rates({achieved, phy}).value();
      CHECK(std::abs(by_blocks - by_rates) < 1e-9);
    }
  }
}

TEST_CASE("normalizations are monotone in their divisor and bounded") {
  RandomStream rng(103);
  for (int it = 0; it < 300; ++it) {
    const auto raw = AirtimeFraction::clamped(rng.uniform01());
    const int total = 64;
    double prev = 2.0;
    for (int allotted = total; allotted >= 1; allotted -= 7) {
      const double v = normalize_ofdma(raw, static_cast<std::uint32_t>(allotted), total).value();
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
    prev = 2.0;
    for (std::uint32_t streams = 1; streams <= 8; ++streams) {
      const double v = normalize_mu_mimo(raw, streams).value();
      CHECK(v <= prev);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }
  }
}
