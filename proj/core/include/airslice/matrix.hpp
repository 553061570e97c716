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

#include <cassert>
#include <span>
#include <vector>

namespace airslice {

/// Small dense row-major matrix of doubles. Rows index substrates,
/// columns index slices throughout the library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  double& at(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<size_t>(r) * cols_ + c];
  }
  double at(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return cells_[static_cast<size_t>(r) * cols_ + c];
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return cells_.empty(); }

  std::span<const double> row(int r) const {
    assert(r >= 0 && r < rows_);
    return {cells_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }

  double row_sum(int r) const {
    double s = 0.0;
    for (double v : row(r)) s += v;
    return s;
  }

  double col_sum(int c) const {
    double s = 0.0;
    for (int r = 0; r < rows_; ++r) s += at(r, c);
    return s;
  }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> cells_;
};

}  // namespace airslice
