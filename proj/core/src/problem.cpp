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

#include "airslice/problem.hpp"

#include <cmath>
#include <string>

namespace airslice {
namespace {

std::string coord(int k, int j) {
  return "(substrate " + std::to_string(k) + ", slice " + std::to_string(j) + ")";
}

bool is_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::string_view to_string(SubstrateKind kind) {
  switch (kind) {
    case SubstrateKind::ScheduledBasestation: return "bts";
    case SubstrateKind::ContentionAccessPoint: return "ap";
  }
  return "unknown";
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

void validate_problem(const AllocationProblem& p) {
  const int n_sub = p.n_substrates();
  const int n_sl = p.n_slices;
  if (n_sub <= 0 || n_sl <= 0) {
    throw Error(Errc::ValidationFailed, "problem needs at least one substrate and one slice");
  }
  if (p.minima.rows() != n_sub || p.minima.cols() != n_sl ||
      p.utility_coeff.rows() != n_sub || p.utility_coeff.cols() != n_sl) {
    throw Error(Errc::ValidationFailed, "minima/utility_coeff must be substrates x slices");
  }
  if (static_cast<int>(p.price_weight.size()) != n_sub) {
    throw Error(Errc::ValidationFailed, "price_weight must have one entry per substrate");
  }
  auto check_per_slice = [n_sl](const auto& v, const char* name) {
    if (!v.empty() && static_cast<int>(v.size()) != n_sl) {
      throw Error(Errc::ValidationFailed, std::string(name) + " must have one entry per slice");
    }
  };
  check_per_slice(p.bid, "bid");
  check_per_slice(p.quota_scheduled, "quota_scheduled");
  check_per_slice(p.quota_contention, "quota_contention");

  for (int k = 0; k < n_sub; ++k) {
    if (!is_nonneg(p.price_weight[k])) {
      throw Error(Errc::ValidationFailed,
                  "price_weight for substrate " + std::to_string(k) + " must be >= 0");
    }
    for (int j = 0; j < n_sl; ++j) {
      if (!is_nonneg(p.utility_coeff.at(k, j))) {
        throw Error(Errc::ValidationFailed, "utility_coeff " + coord(k, j) + " must be >= 0");
      }
      const double d = p.minima.at(k, j);
      if (!is_nonneg(d) || d > 1.0) {
        throw Error(Errc::ValidationFailed, "minimum " + coord(k, j) + " must lie in [0, 1]");
      }
    }
  }
  auto check_budgets = [](const auto& v, const char* name) {
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] && !is_nonneg(*v[j])) {
        throw Error(Errc::ValidationFailed,
                    std::string(name) + " for slice " + std::to_string(j) + " must be >= 0");
      }
    }
  };
  check_budgets(p.bid, "bid");
  check_budgets(p.quota_scheduled, "quota_scheduled");
  check_budgets(p.quota_contention, "quota_contention");
}

double revenue_of(const AllocationMatrix& t, const AllocationProblem& p) {
  if (t.rows() != p.n_substrates() || t.cols() != p.n_slices) {
    throw Error(Errc::DimensionMismatch,
                "allocation is " + std::to_string(t.rows()) + "x" + std::to_string(t.cols()) +
                    ", problem wants " + std::to_string(p.n_substrates()) + "x" +
                    std::to_string(p.n_slices));
  }
  double revenue = 0.0;
  for (int k = 0; k < t.rows(); ++k) {
    double per_substrate = 0.0;
    for (int j = 0; j < t.cols(); ++j) {
      per_substrate += t.at(k, j) * p.utility_coeff.at(k, j);
    }
    revenue += p.price_weight[k] * per_substrate;
  }
  return revenue;
}

FeasibilityReport check_feasibility(const AllocationProblem& p) {
  std::string violation;
  if (!allocation_satisfies(p.minima, p, 1e-9, &violation)) {
    return {false, violation};
  }
  return {true, ""};
}

bool allocation_satisfies(const AllocationMatrix& t, const AllocationProblem& p,
                          double tol, std::string* violation) {
  auto fail = [violation](std::string what) {
    if (violation) *violation = std::move(what);
    return false;
  };
  if (t.rows() != p.n_substrates() || t.cols() != p.n_slices) {
    return fail("allocation dimensions do not match problem");
  }
  for (int k = 0; k < t.rows(); ++k) {
    for (int j = 0; j < t.cols(); ++j) {
      const double v = t.at(k, j);
      if (!(v >= -tol) || !(v <= 1.0 + tol)) {
        return fail("entry " + coord(k, j) + " = " + std::to_string(v) + " outside [0, 1]");
      }
      if (v < p.minima.at(k, j) - tol) {
        return fail("entry " + coord(k, j) + " = " + std::to_string(v) +
                    " below minimum reservation " + std::to_string(p.minima.at(k, j)));
      }
    }
  }
  for (int k = 0; k < t.rows(); ++k) {
    const double s = t.row_sum(k);
    if (s > 1.0 + tol) {
      return fail("substrate " + std::to_string(k) + " airtime sum " + std::to_string(s) +
                  " exceeds 1");
    }
  }
  for (int j = 0; j < t.cols(); ++j) {
    double total = 0.0, scheduled = 0.0, contention = 0.0;
    for (int k = 0; k < t.rows(); ++k) {
      total += t.at(k, j);
      if (p.substrates[k].kind == SubstrateKind::ScheduledBasestation) {
        scheduled += t.at(k, j);
      } else {
        contention += t.at(k, j);
      }
    }
    if (!p.bid.empty() && p.bid[j] && total > *p.bid[j] + tol) {
      return fail("slice " + std::to_string(j) + " total airtime " + std::to_string(total) +
                  " exceeds bid " + std::to_string(*p.bid[j]));
    }
    if (!p.quota_scheduled.empty() && p.quota_scheduled[j] &&
        scheduled > *p.quota_scheduled[j] + tol) {
      return fail("slice " + std::to_string(j) + " basestation airtime " +
                  std::to_string(scheduled) + " exceeds quota " +
                  std::to_string(*p.quota_scheduled[j]));
    }
    if (!p.quota_contention.empty() && p.quota_contention[j] &&
        contention > *p.quota_contention[j] + tol) {
      return fail("slice " + std::to_string(j) + " access-point airtime " +
                  std::to_string(contention) + " exceeds quota " +
                  std::to_string(*p.quota_contention[j]));
    }
  }
  return true;
}

}  // namespace airslice
