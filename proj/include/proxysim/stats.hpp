/*
 * Copyright 2026 The proxysim Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PROXYSIM_STATS_HPP
#define PROXYSIM_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace proxysim {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  // 1 when y is constant (a flat line fits exactly).
  double r_squared = 0.0;
  std::size_t points = 0;
};

// Ordinary least squares y = slope * x + intercept. Throws
// std::invalid_argument for mismatched lengths, fewer than 2 points, or
// constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Splits `values` into `bins` contiguous groups of equal width (the first
// size % bins groups get one extra element) and sums each group.
std::vector<double> binned_sums(std::span<const double> values,
                                std::size_t bins);

bool is_non_increasing(std::span<const double> values);

// Whether the running sum of `increments` is concave, i.e. the increments
// never grow.
inline bool cumulative_is_concave(std::span<const double> increments) {
  return is_non_increasing(increments);
}

}  // namespace proxysim

#endif  // PROXYSIM_STATS_HPP
