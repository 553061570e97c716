#include <doctest.h>

#include <cmath>
#include <vector>

#include "airslice/config.hpp"
#include "airslice/substrate.hpp"

using namespace airslice;

namespace {

SubstrateState ap_state(std::uint64_t seed = 5) {
  return make_substrate({1, SubstrateKind::ContentionAccessPoint}, 36.0, 2, seed);
}

SubstrateState bts_state(std::uint64_t seed = 5) {
  return make_substrate({0, SubstrateKind::ScheduledBasestation}, 20.0, 2, seed);
}

}  // namespace

TEST_CASE("step_load draws inside the configured band") {
  SUBCASE("explicit 0.1 floor") {
    auto s = ap_state();
    const LoadModel model{LoadModel::Kind::Uniform, 0.1, 0.0};
    for (int it = 0; it < 5000; ++it) {
      s = step_load(std::move(s), model);
      for (double r : s.per_slice_phy_rate) {
        CHECK(r >= 3.6);
        CHECK(r <= 36.0);
      }
    }
  }
  SUBCASE("default floor") {
    auto s = ap_state();
    const LoadModel model;
    for (int it = 0; it < 5000; ++it) {
      s = step_load(std::move(s), model);
      for (double r : s.per_slice_phy_rate) {
        CHECK(r >= 0.14 * 36.0);
        CHECK(r <= 36.0);
      }
    }
  }
}

TEST_CASE("constant load model has zero variance") {
  auto s = bts_state();
  const LoadModel model{LoadModel::Kind::Constant, 0.1, 20.0};
  for (int it = 0; it < 10; ++it) {
    s = step_load(std::move(s), model);
    for (double r : s.per_slice_phy_rate) CHECK(r == 20.0);
  }
}

TEST_CASE("same seed reproduces the same rate sequence") {
  auto a = ap_state(99);
  auto b = ap_state(99);
  const LoadModel model;
  for (int it = 0; it < 100; ++it) {
    a = step_load(std::move(a), model);
    b = step_load(std::move(b), model);
    CHECK(a.per_slice_phy_rate == b.per_slice_phy_rate);
  }
}

TEST_CASE("apply_quota stores and enforces the airtime budget") {
  auto s = ap_state();
  const std::vector<double> ok{0.7, 0.3};
  s = apply_quota(std::move(s), ok);
  CHECK(s.current_quota == ok);

  const std::vector<double> overflow{0.6, 0.6};
  CHECK_THROWS_WITH_AS(apply_quota(ap_state(), overflow), doctest::Contains("QuotaOverflow"),
                       Error);

  const std::vector<double> starved{0.0, 0.0};
  auto idle = apply_quota(ap_state(), starved);
  const auto rep = report(idle, 0);
  CHECK(rep.slices[0].achieved_rate == 0.0);
  CHECK(rep.slices[1].achieved_rate == 0.0);
  CHECK(!rep.slices[0].usage_flag);
}

TEST_CASE("report implements the saturated-demand accounting") {
  auto s = ap_state();
  s.per_slice_phy_rate = {36.0, 36.0};
  s = apply_quota(std::move(s), std::vector<double>{0.5, 0.5});
  auto rep = report(s, 3);
  CHECK(rep.cycle == 3);
  CHECK(rep.slices[0].achieved_rate == doctest::Approx(18.0));
  CHECK(rep.slices[1].achieved_rate == doctest::Approx(18.0));

  s.per_slice_phy_rate = {20.0, 10.0};
  s = apply_quota(std::move(s), std::vector<double>{1.0, 0.0});
  rep = report(s, 4);
  CHECK(rep.slices[0].achieved_rate == doctest::Approx(20.0));
  CHECK(rep.slices[1].achieved_rate == doctest::Approx(0.0));

  s.per_slice_phy_rate = {36.0, 18.0};
  s = apply_quota(std::move(s), std::vector<double>{0.7, 0.3});
  rep = report(s, 5);
  CHECK(rep.slices[0].achieved_rate == doctest::Approx(25.2));
  CHECK(rep.slices[1].achieved_rate == doctest::Approx(5.4));
}

TEST_CASE("report invariants hold across random cycles") {
  auto s = ap_state(31);
  s = apply_quota(std::move(s), std::vector<double>{0.6, 0.4});
  const LoadModel model;
  for (std::int64_t cycle = 0; cycle < 500; ++cycle) {
    s = step_load(std::move(s), model);
    const auto rep = report(s, cycle);
    for (size_t j = 0; j < rep.slices.size(); ++j) {
      const auto& sl = rep.slices[j];
      CHECK(sl.used_airtime <= s.current_quota[j] + 1e-9);
      CHECK(std::abs(sl.achieved_rate - sl.used_airtime * sl.avg_phy_rate) < 1e-9);
      CHECK(sl.achieved_rate <= s.peak_phy_rate + 1e-9);
      CHECK(sl.requested_airtime >= 0.0);
      CHECK(sl.requested_airtime <= 1.0);
    }
    s = commit_report(std::move(s), rep);
  }
}

TEST_CASE("requested airtime replays the previous achieved rate") {
  auto s = ap_state();
  s.per_slice_phy_rate = {30.0, 30.0};
  s = apply_quota(std::move(s), std::vector<double>{0.5, 0.1});
  auto rep = report(s, 0);
  s = commit_report(std::move(s), rep);
  // Achieved 15 and 3 Mbps; at a new phy rate of 10 those need 1.0 (clamped
  // from 1.5) and 0.3 airtime.
  s.per_slice_phy_rate = {10.0, 10.0};
  rep = report(s, 1);
  CHECK(rep.slices[0].requested_airtime == doctest::Approx(1.0));
  CHECK(rep.slices[1].requested_airtime == doctest::Approx(0.3));
}

TEST_CASE("kinds differ only in tag and peak under equal parameters") {
  auto a = make_substrate({0, SubstrateKind::ScheduledBasestation}, 25.0, 2, 77);
  auto b = make_substrate({0, SubstrateKind::ContentionAccessPoint}, 25.0, 2, 77);
  const LoadModel model;
  a = apply_quota(std::move(a), std::vector<double>{0.4, 0.5});
  b = apply_quota(std::move(b), std::vector<double>{0.4, 0.5});
  for (std::int64_t cycle = 0; cycle < 50; ++cycle) {
    a = step_load(std::move(a), model);
    b = step_load(std::move(b), model);
    const auto ra = report(a, cycle);
    const auto rb = report(b, cycle);
    for (size_t j = 0; j < ra.slices.size(); ++j) {
      CHECK(ra.slices[j].avg_phy_rate == rb.slices[j].avg_phy_rate);
      CHECK(ra.slices[j].achieved_rate == rb.slices[j].achieved_rate);
      CHECK(ra.slices[j].used_airtime == rb.slices[j].used_airtime);
    }
  }
}

TEST_CASE("static allocation splits bids equally") {
  ExperimentConfig c;
  c.bids = {1.4, 0.6};
  auto t = static_allocation(c);
  CHECK(t.at(0, 0) == doctest::Approx(0.7));
  CHECK(t.at(0, 1) == doctest::Approx(0.3));
  CHECK(t.at(1, 0) == doctest::Approx(0.7));
  CHECK(t.at(1, 1) == doctest::Approx(0.3));

  c.bids = {1.0, 1.0};
  t = static_allocation(c);
  CHECK(t.at(0, 0) == doctest::Approx(0.5));
  CHECK(t.at(1, 1) == doctest::Approx(0.5));

  SUBCASE("overflowing split rejected") {
    c.bids = {2.0, 0.6};
    CHECK_THROWS_WITH_AS(static_allocation(c), doctest::Contains("InfeasibleStatic"), Error);
  }
  SUBCASE("split below a reservation rejected") {
    c.bids = {1.4, 0.6};
    c.minima = {{"ap0", 0, 0.8}};
    CHECK_THROWS_WITH_AS(static_allocation(c), doctest::Contains("InfeasibleStatic"), Error);
  }
  SUBCASE("split meeting a reservation exactly accepted") {
    c.bids = {1.4, 0.6};
    c.minima = {{"ap0", 0, 0.7}};
    CHECK_NOTHROW(static_allocation(c));
  }
}
