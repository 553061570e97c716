#include <doctest.h>

#include "airslice/policy.hpp"
#include "generators.hpp"

using namespace airslice;

namespace {

/// Random valid document exercising optional fields.
PolicyDocument random_policy(RandomStream& rng, std::int64_t version) {
  PolicyDocument p;
  p.version = version;
  const int n_bts = 1 + static_cast<int>(rng.uniform01() * 2);
  const int n_ap = 1 + static_cast<int>(rng.uniform01() * 2);
  for (int i = 0; i < n_bts; ++i) {
    p.substrates.push_back({"bts" + std::to_string(i), SubstrateKind::ScheduledBasestation});
  }
  for (int i = 0; i < n_ap; ++i) {
    p.substrates.push_back({"ap" + std::to_string(i), SubstrateKind::ContentionAccessPoint});
  }
  const int n_sl = 1 + static_cast<int>(rng.uniform01() * 3);
  for (int j = 0; j < n_sl; ++j) {
    SliceSpec s;
    s.name = "slc" + std::to_string(j);
    s.bid = rng.uniform(0.2, 0.45);  // worst case 4 x 0.45 stays under 2 substrates
    if (rng.uniform01() < 0.4) s.quota_scheduled = rng.uniform(0.2, 1.0);
    if (rng.uniform01() < 0.4) s.quota_contention = rng.uniform(0.2, 1.0);
    p.slices.push_back(std::move(s));
  }
  if (rng.uniform01() < 0.5) {
    p.minima.push_back({p.substrates.front().name, 0, rng.uniform(0.0, 0.1)});
  }
  if (rng.uniform01() < 0.5) {
    p.pricing_mode = PricingMode::WeightedRevenue;
    p.price_weights["bts"] = rng.uniform(0.5, 3.0);
    p.price_weights["ap"] = rng.uniform(0.5, 3.0);
  }
  if (rng.uniform01() < 0.3) {
    p.coefficient_source = CoefficientSource::Fixed;
    p.fixed_coefficients = Matrix(static_cast<int>(p.substrates.size()), n_sl);
    for (int k = 0; k < p.fixed_coefficients.rows(); ++k) {
      for (int j = 0; j < n_sl; ++j) p.fixed_coefficients.at(k, j) = rng.uniform(1.0, 30.0);
    }
  }
  p.control_period = 1 + static_cast<int>(rng.uniform01() * 4);
  p.policy_refresh_period = 10 + static_cast<int>(rng.uniform01() * 200);
  return p;
}

}  // namespace

TEST_CASE("serialization round-trips valid documents") {
  RandomStream rng(314);
  for (int it = 0; it < 100; ++it) {
    const auto doc = random_policy(rng, it + 1);
    REQUIRE(validate_policy(doc).empty());
    const auto back = policy_from_json(policy_to_json(doc));
    CHECK(back == doc);
  }
}

TEST_CASE("validation flags each spec'd violation") {
  SUBCASE("reservations overflowing a substrate name it") {
    auto p = testsupport::sample_policy();
    p.minima = {{"ap0", 0, 0.7}, {"ap0", 1, 0.5}};
    const auto v = validate_policy(p);
    REQUIRE(!v.empty());
    CHECK(v.front().detail.find("ap0") != std::string::npos);
  }
  SUBCASE("bids above total substrate airtime rejected") {
    auto p = testsupport::sample_policy();
    p.slices[0].bid = 2.0;  // 2.0 + 0.6 > 2 substrates
    const auto v = validate_policy(p);
    REQUIRE(!v.empty());
    CHECK(v.front().field == "slices");
  }
  SUBCASE("negative price weight names the field") {
    auto p = testsupport::sample_policy();
    p.price_weights["bts0"] = -1.0;
    const auto v = validate_policy(p);
    REQUIRE(!v.empty());
    CHECK(v.front().field == "price_weights.bts0");
  }
  SUBCASE("reservation above the slice bid rejected") {
    auto p = testsupport::sample_policy();
    p.minima = {{"ap0", 1, 0.7}};  // slc2 bid is 0.6
    CHECK(!validate_policy(p).empty());
  }
  SUBCASE("unknown utility form rejected") {
    auto p = testsupport::sample_policy();
    p.utility_form = "quadratic";
    CHECK(!validate_policy(p).empty());
  }
  SUBCASE("table parameters validate cleanly") {
    CHECK(validate_policy(testsupport::sample_policy()).empty());
  }
}

TEST_CASE("malformed JSON reports a parse location") {
  CHECK_THROWS_WITH_AS(policy_from_json("{\"version\": 1,"), doctest::Contains("byte"), Error);
  CHECK_THROWS_WITH_AS(policy_from_json("[]"), doctest::Contains("object"), Error);
  CHECK_THROWS_WITH_AS(policy_from_json("{\"version\": 1}"),
                       doctest::Contains("substrates"), Error);
}

TEST_CASE("price weight lookup prefers names over kind defaults") {
  auto p = testsupport::sample_policy();
  p.price_weights = {{"bts", 2.0}, {"bts0", 3.0}};
  CHECK(price_weight_for(p, p.substrates[0]) == 3.0);
  p.price_weights = {{"bts", 2.0}};
  CHECK(price_weight_for(p, p.substrates[0]) == 2.0);
  CHECK(price_weight_for(p, p.substrates[1]) == 1.0);
}
