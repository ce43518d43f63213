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

// Single-pass two-stage summarization: the exchange rule, the variant with a
// known optimum, and the threshold-guessing manager behind full streaming.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "twostage/core.hpp"

namespace twostage {

// Violation counters collected by instrumented runs. Every counter must stay
// at zero on a correct implementation.
struct StreamDiagnostics {
  std::uint64_t steps_checked = 0;
  // f_i(T_i) >= alpha/(alpha+1) * f_i(A_i), A_i = every element ever in T_i.
  std::uint64_t trace_bound_violations = 0;
  // accepted element raised 1/m sum f_i(T_i) by less than tau.
  std::uint64_t acceptance_gain_violations = 0;
  // average thresholded gain of an arrival exceeded delta^t.
  std::uint64_t gain_cap_violations = 0;
  // more live threshold instances than the logarithmic bound.
  std::uint64_t instance_count_violations = 0;

  std::uint64_t total_violations() const {
    return trace_bound_violations + acceptance_gain_violations + gain_cap_violations +
           instance_count_violations;
  }
  void merge(const StreamDiagnostics& other);
};

inline constexpr double kDiagnosticTolerance = 1e-9;

// S, {T_i} and the parameters of one thresholded streaming run.
class StreamState {
 public:
  StreamState(const ObjectiveFamily& family, std::size_t ell, std::size_t k, double alpha,
              double tau, bool instrument = false);

  // Offers u to the state. Accepts when |S| < ell and the average of the
  // thresholded gains reaches tau; each T_i with a positive gain then takes u
  // by insertion or by swapping out Rep_i(u, T_i). Duplicates are rejected.
  bool exchange(ElementId u);

  // Average thresholded gain computed by the most recent exchange call
  // (0 when the call returned before evaluating).
  double last_average_gain() const { return last_average_gain_; }

  const ElementSet& summary() const { return summary_; }
  const std::vector<ElementSet>& per_function() const { return sets_; }
  const std::vector<double>& function_values() const { return values_; }
  double value() const;
  double tau() const { return tau_; }
  double alpha() const { return alpha_; }
  std::size_t ell() const { return ell_; }
  std::size_t k() const { return k_; }
  bool full() const { return summary_.size() >= ell_; }

  // Union of every T_i^j seen so far; only tracked when instrumented.
  const std::vector<ElementSet>& trace_sets() const { return trace_; }
  const StreamDiagnostics& diagnostics() const { return diagnostics_; }

  TwoStageSolution solution() const;

 private:
  void check_after_accept(double value_before);

  const ObjectiveFamily* family_;
  std::size_t ell_;
  std::size_t k_;
  double alpha_;
  double tau_;
  bool instrument_;

  ElementSet summary_;
  std::vector<ElementSet> sets_;
  std::vector<double> values_;
  std::vector<SwapOutcome> moves_;
  double last_average_gain_ = 0.0;

  std::vector<ElementSet> trace_;
  StreamDiagnostics diagnostics_;
};

struct StreamingResult {
  TwoStageSolution solution;
  std::optional<int> level;  // winning threshold exponent (guessing runs)
  double tau = 0.0;
  std::size_t peak_stored = 0;     // max over time of sum over instances |S_tau|
  std::size_t peak_instances = 0;  // max live instances
  StreamDiagnostics diagnostics;
};

struct KnowOptParams {
  double alpha = 1.0;
  double beta = 6.0;
  std::size_t ell = 1;
  std::size_t k = 1;
  bool instrument = false;
};

// One pass of exchange with tau = opt / (beta * ell). When instrumented, the
// running delta^t is also tracked to check the arrival gain cap.
StreamingResult run_know_opt(std::span<const ElementId> stream, const ObjectiveFamily& family,
                             double opt, const KnowOptParams& params);

struct StreamParams {
  double epsilon = 0.5;
  double alpha = 1.0;
  std::optional<double> beta;  // default (6 + epsilon) / (1 + epsilon)
  std::size_t ell = 1;
  std::size_t k = 1;
  bool instrument = false;

  double resolved_beta() const;
};

// One live threshold tau = (1 + epsilon)^level and its stream state.
struct ThresholdInstance {
  int level = 0;
  double tau = 0.0;
  StreamState state;
};

// Maintains delta^t and the geometric threshold grid
// { (1+eps)^l : delta/((1+eps) beta ell) <= (1+eps)^l <= delta }, one lazily
// created StreamState per live level.
class ThresholdManager {
 public:
  ThresholdManager(const ObjectiveFamily& family, const StreamParams& params);

  // delta^t = max(delta^{t-1}, 1/m sum_i f_i({u})); drops instances below the
  // grid and creates empty ones for new levels.
  void update_thresholds(ElementId u);
  // Same as above with the singleton average supplied by the caller.
  void update_thresholds_with(double singleton_average);

  // update_thresholds followed by exchange into every live instance.
  void process(ElementId u);

  double delta() const { return delta_; }
  const std::map<int, ThresholdInstance>& instances() const { return instances_; }
  std::vector<double> active_taus() const;
  std::size_t stored_elements() const;
  std::size_t peak_stored() const { return peak_stored_; }
  std::size_t peak_instances() const { return peak_instances_; }

  // ceil(log_{1+eps}((1+eps) beta ell)) + 1
  std::size_t instance_bound() const;

  // Best instance by 1/m sum f_i(T_i); lowest level wins ties. Empty
  // solution when no instance is live.
  StreamingResult best() const;
  StreamDiagnostics diagnostics() const;

  double tau_for(int level) const;

 private:
  const ObjectiveFamily* family_;
  StreamParams params_;
  double beta_;
  double delta_ = 0.0;
  std::map<int, ThresholdInstance> instances_;
  std::size_t peak_stored_ = 0;
  std::size_t peak_instances_ = 0;
  StreamDiagnostics manager_diagnostics_;
  StreamDiagnostics retired_diagnostics_;
};

// Full single-pass algorithm with unknown optimum.
StreamingResult run_streaming(std::span<const ElementId> stream, const ObjectiveFamily& family,
                              const StreamParams& params);

// Drives a manager from any input range of element ids.
template <class Range>
StreamingResult run_streaming_range(Range&& stream, const ObjectiveFamily& family,
                                    const StreamParams& params) {
  ThresholdManager manager(family, params);
  for (ElementId u : stream) manager.process(u);
  return manager.best();
}

}  // namespace twostage
