#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include "airslice/solver.hpp"
#include "generators.hpp"

using namespace airslice;
using testsupport::random_dims;
using testsupport::random_problem;

namespace {

AllocationProblem single_var_problem(double coeff = 20.0) {
  AllocationProblem p;
  p.substrates = {{0, SubstrateKind::ScheduledBasestation}};
  p.n_slices = 1;
  p.bid = {1.0};
  p.quota_scheduled.resize(1);
  p.quota_contention.resize(1);
  p.minima = Matrix(1, 1);
  p.utility_coeff = Matrix(1, 1);
  p.utility_coeff.at(0, 0) = coeff;
  p.price_weight = {1.0};
  return p;
}

AllocationProblem two_slice_problem() {
  AllocationProblem p;
  p.substrates = {{0, SubstrateKind::ScheduledBasestation}};
  p.n_slices = 2;
  p.bid = {1.0, 1.0};
  p.quota_scheduled.resize(2);
  p.quota_contention.resize(2);
  p.minima = Matrix(1, 2);
  p.utility_coeff = Matrix(1, 2);
  p.utility_coeff.at(0, 0) = 36.0;
  p.utility_coeff.at(0, 1) = 18.0;
  p.price_weight = {1.0};
  return p;
}

/// Table-1 shape: one basestation, one access point, two slices with total
/// bids 1.4 and 0.6.
AllocationProblem table_problem(double c_b0, double c_b1, double c_a0, double c_a1) {
  AllocationProblem p;
  p.substrates = {{0, SubstrateKind::ScheduledBasestation},
                  {1, SubstrateKind::ContentionAccessPoint}};
  p.n_slices = 2;
  p.bid = {1.4, 0.6};
  p.quota_scheduled.resize(2);
  p.quota_contention.resize(2);
  p.minima = Matrix(2, 2);
  p.utility_coeff = Matrix(2, 2);
  p.utility_coeff.at(0, 0) = c_b0;
  p.utility_coeff.at(0, 1) = c_b1;
  p.utility_coeff.at(1, 0) = c_a0;
  p.utility_coeff.at(1, 1) = c_a1;
  p.price_weight = {1.0, 1.0};
  return p;
}

}  // namespace

TEST_CASE("revenue_of evaluates the weighted linear objective") {
  auto p = table_problem(36.0, 18.0, 20.0, 10.0);
  p.price_weight = {1.0, 2.0};

  AllocationMatrix zero(2, 2);
  CHECK(revenue_of(zero, p) == 0.0);

  AllocationMatrix t(2, 2);
  t.at(0, 0) = 0.7;
  t.at(0, 1) = 0.3;
  t.at(1, 0) = 0.5;
  t.at(1, 1) = 0.5;
  CHECK(revenue_of(t, p) == doctest::Approx(60.6));

  auto single = single_var_problem(36.0);
  AllocationMatrix full(1, 1);
  full.at(0, 0) = 1.0;
  CHECK(revenue_of(full, single) == doctest::Approx(36.0));

  CHECK_THROWS_WITH_AS(revenue_of(AllocationMatrix(1, 3), p),
                       doctest::Contains("DimensionMismatch"), Error);
}

TEST_CASE("solve: single unconstrained variable saturates") {
  const auto rep = solve(single_var_problem(20.0));
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.allocation.at(0, 0) == doctest::Approx(1.0));
  CHECK(rep.objective == doctest::Approx(20.0));
}

TEST_CASE("solve: all airtime goes to the larger coefficient") {
  const auto rep = solve(two_slice_problem());
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.allocation.at(0, 0) == doctest::Approx(1.0));
  CHECK(rep.allocation.at(0, 1) == doctest::Approx(0.0));
  CHECK(rep.objective == doctest::Approx(36.0));

  const auto oracle = brute_force_solve(two_slice_problem(), 0.05);
  REQUIRE(oracle.status == SolveStatus::Optimal);
  CHECK(oracle.objective == doctest::Approx(36.0));
  CHECK(oracle.allocation.at(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("solve honors an access-point minimum reservation") {
  RandomStream rng(7);
  for (int it = 0; it < 25; ++it) {
    auto p = table_problem(rng.uniform(2.0, 20.0), rng.uniform(2.0, 20.0),
                           rng.uniform(3.6, 36.0), rng.uniform(3.6, 36.0));
    p.minima.at(1, 0) = 0.7;
    const auto rep = solve(p);
    REQUIRE(rep.status == SolveStatus::Optimal);
    CHECK(rep.allocation.at(1, 0) >= 0.7 - 1e-9);
    CHECK(allocation_satisfies(rep.allocation, p, 1e-9));

    const auto oracle = brute_force_solve(p, 0.02);
    REQUIRE(oracle.status == SolveStatus::Optimal);
    // Continuous optimum dominates the grid; grid trails by at most the
    // resolution error bound.
    const double bound = p.n_variables() * 0.02 * 40.0;
    CHECK(rep.objective >= oracle.objective - 1e-9);
    CHECK(oracle.objective >= rep.objective - bound);
  }
}

TEST_CASE("brute force oracle basics") {
  const auto rep = brute_force_solve(single_var_problem(20.0), 0.1);
  REQUIRE(rep.status == SolveStatus::Optimal);
  CHECK(rep.allocation.at(0, 0) == doctest::Approx(1.0));
  CHECK(rep.objective == doctest::Approx(20.0));

  SUBCASE("infeasible minima yield Infeasible status") {
    auto p = two_slice_problem();
    p.minima.at(0, 0) = 0.7;
    p.minima.at(0, 1) = 0.5;
    CHECK(brute_force_solve(p, 0.1).status == SolveStatus::Infeasible);
    CHECK(solve(p).status == SolveStatus::Infeasible);
  }
  SUBCASE("variable budget is capped at 6") {
    AllocationProblem p = table_problem(1, 1, 1, 1);
    p.n_slices = 4;
    p.bid.assign(4, std::optional<double>{});
    p.quota_scheduled.assign(4, std::optional<double>{});
    p.quota_contention.assign(4, std::optional<double>{});
    p.minima = Matrix(2, 4);
    p.utility_coeff = Matrix(2, 4, 1.0);
    CHECK_THROWS_WITH_AS(brute_force_solve(p, 0.1), doctest::Contains("TooManyVariables"),
                         Error);
  }
  SUBCASE("grid step must divide 1") {
    CHECK_THROWS_AS(brute_force_solve(single_var_problem(), 0.3), Error);
  }
}

TEST_CASE("check_feasibility mirrors polytope emptiness") {
  SUBCASE("zero minima, unit quotas") {
    CHECK(check_feasibility(two_slice_problem()).feasible);
  }
  SUBCASE("per-substrate overflow reported") {
    auto p = two_slice_problem();
    p.minima.at(0, 0) = 0.7;
    p.minima.at(0, 1) = 0.5;
    const auto rep = check_feasibility(p);
    CHECK(!rep.feasible);
    CHECK(rep.violation.find("substrate 0") != std::string::npos);
  }
  SUBCASE("contention quota below a reservation reported") {
    auto p = table_problem(10, 10, 10, 10);
    p.minima.at(1, 0) = 0.7;
    p.quota_contention[0] = 0.6;
    const auto rep = check_feasibility(p);
    CHECK(!rep.feasible);
    CHECK(rep.violation.find("quota") != std::string::npos);
  }
}

TEST_CASE("oracle agreement on random feasible problems") {
  RandomStream rng(2024);
  for (int it = 0; it < 60; ++it) {
    const auto [n_sub, n_sl] = random_dims(rng);
    const auto p = random_problem(rng, n_sub, n_sl);
    REQUIRE(check_feasibility(p).feasible);

    const auto lp = solve(p);
    REQUIRE(lp.status == SolveStatus::Optimal);
    std::string why;
    CHECK_MESSAGE(allocation_satisfies(lp.allocation, p, 1e-9, &why), why);
    CHECK(lp.objective == doctest::Approx(revenue_of(lp.allocation, p)).epsilon(1e-9));

    const auto grid = brute_force_solve(p, 0.05);
    REQUIRE(grid.status == SolveStatus::Optimal);
    double max_weighted = 0.0;
    for (int k = 0; k < n_sub; ++k) {
      for (int j = 0; j < n_sl; ++j) {
        max_weighted =
            std::max(max_weighted, p.price_weight[k] * std::abs(p.utility_coeff.at(k, j)));
      }
    }
    const double bound = p.n_variables() * 0.05 * max_weighted;
    CHECK(lp.objective >= grid.objective - 1e-9);
    CHECK(grid.objective >= lp.objective - bound);
  }
}

TEST_CASE("scaling all coefficients scales the optimum linearly") {
  RandomStream rng(9);
  for (int it = 0; it < 30; ++it) {
    const auto [n_sub, n_sl] = random_dims(rng, 4);
    auto p = random_problem(rng, n_sub, n_sl);
    const double factor = rng.uniform(0.5, 5.0);
    auto scaled = p;
    for (int k = 0; k < n_sub; ++k) {
      for (int j = 0; j < n_sl; ++j) {
        scaled.utility_coeff.at(k, j) = p.utility_coeff.at(k, j) * factor;
      }
    }
    const auto base = solve(p);
    const auto up = solve(scaled);
    REQUIRE(base.status == SolveStatus::Optimal);
    REQUIRE(up.status == SolveStatus::Optimal);
    CHECK(up.objective == doctest::Approx(base.objective * factor).epsilon(1e-9));
    // The base argmax stays optimal for the scaled problem.
    CHECK(revenue_of(base.allocation, scaled) == doctest::Approx(up.objective).epsilon(1e-9));
  }
}

TEST_CASE("raising a bid never lowers the optimum") {
  RandomStream rng(10);
  for (int it = 0; it < 30; ++it) {
    const auto [n_sub, n_sl] = random_dims(rng, 4);
    auto p = random_problem(rng, n_sub, n_sl);
    const auto base = solve(p);
    auto relaxed = p;
    for (int j = 0; j < n_sl; ++j) {
      if (relaxed.bid[j]) *relaxed.bid[j] += rng.uniform(0.0, 1.0);
    }
    const auto better = solve(relaxed);
    REQUIRE(base.status == SolveStatus::Optimal);
    REQUIRE(better.status == SolveStatus::Optimal);
    CHECK(better.objective >= base.objective - 1e-9);
  }
}

TEST_CASE("identical problems solve identically") {
  RandomStream rng(11);
  const auto p = random_problem(rng, 2, 2);
  const auto a = solve(p);
  const auto b = solve(p);
  CHECK(a.objective == b.objective);
  CHECK(a.allocation == b.allocation);
  const auto ga = brute_force_solve(p, 0.1);
  const auto gb = brute_force_solve(p, 0.1);
  CHECK(ga.objective == gb.objective);
  CHECK(ga.allocation == gb.allocation);
}

TEST_CASE("concurrent solves of one problem agree") {
  RandomStream rng(12);
  const auto p = random_problem(rng, 2, 3);
  const auto expected = solve(p);
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int i = 0; i < 8; ++i) {
    workers.emplace_back([&] {
      for (int it = 0; it < 50; ++it) {
        const auto rep = solve(p);
        if (rep.objective != expected.objective || !(rep.allocation == expected.allocation)) {
          ++mismatches;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(mismatches == 0);
}

TEST_CASE("malformed problems are rejected at validation") {
  auto p = two_slice_problem();
  p.utility_coeff.at(0, 0) = -1.0;
  CHECK_THROWS_WITH_AS(solve(p), doctest::Contains("ValidationFailed"), Error);

  auto q = two_slice_problem();
  q.price_weight = {-0.5};
  CHECK_THROWS_AS(solve(q), Error);

  auto r = two_slice_problem();
  r.minima = Matrix(2, 2);
  CHECK_THROWS_AS(solve(r), Error);
}
