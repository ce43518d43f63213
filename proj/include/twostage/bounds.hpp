// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>

namespace twostage::bounds {

// 1/2 (1 - e^-2), the replacement-greedy factor.
inline double greedy_ratio() { return 0.5 * (1.0 - std::exp(-2.0)); }

// min{ alpha (beta - 1) / (beta ((alpha + 1)^2 + alpha)), 1 / beta }.
inline double know_opt_ratio(double alpha, double beta) {
  const double swap_term = alpha * (beta - 1.0) / (beta * ((alpha + 1.0) * (alpha + 1.0) + alpha));
  return std::min(swap_term, 1.0 / beta);
}

// Same with the 1/beta branch weakened by the threshold-grid factor 1 + eps.
inline double streaming_ratio(double alpha, double beta, double epsilon) {
  const double swap_term = alpha * (beta - 1.0) / (beta * ((alpha + 1.0) * (alpha + 1.0) + alpha));
  return std::min(swap_term, 1.0 / (beta * (1.0 + epsilon)));
}

// Expected factor of greedy workers plus greedy merge.
inline double distributed_ratio() { return greedy_ratio() / 2.0; }

// Expected factor of streaming workers plus greedy merge, gamma = 1/(6+eps).
inline double distributed_fast_ratio(double epsilon) {
  const double a = greedy_ratio();
  const double g = 1.0 / (6.0 + epsilon);
  return a * g / (a + g);
}

}  // namespace twostage::bounds
