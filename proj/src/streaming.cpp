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

#include "twostage/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twostage {

namespace {

bool below(double lhs, double rhs) {
  return lhs < rhs - kDiagnosticTolerance * std::max(1.0, std::abs(rhs));
}

double singleton_average(const ObjectiveFamily& family, ElementId u) {
  const ElementId single[1] = {u};
  double total = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) total += family.value(i, single);
  return total / static_cast<double>(family.size());
}

}  // namespace

void StreamDiagnostics::merge(const StreamDiagnostics& other) {
  steps_checked += other.steps_checked;
  trace_bound_violations += other.trace_bound_violations;
  acceptance_gain_violations += other.acceptance_gain_violations;
  gain_cap_violations += other.gain_cap_violations;
  instance_count_violations += other.instance_count_violations;
}

StreamState::StreamState(const ObjectiveFamily& family, std::size_t ell, std::size_t k,
                         double alpha, double tau, bool instrument)
    : family_(&family),
      ell_(ell),
      k_(k),
      alpha_(alpha),
      tau_(tau),
      instrument_(instrument),
      sets_(family.size()),
      values_(family.size(), 0.0),
      moves_(family.size()) {
  if (ell_ < 1) throw ArgumentError("ell must be at least 1");
  if (k_ < 1) throw ArgumentError("k must be at least 1");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw ArgumentError("alpha must be positive");
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw ArgumentError("tau must be positive");
  if (instrument_) trace_.resize(family.size());
}

double StreamState::value() const {
  double total = 0.0;
  for (double v : values_) total += v;
  return total / static_cast<double>(values_.size());
}

bool StreamState::exchange(ElementId u) {
  last_average_gain_ = 0.0;
  family_->check_element(u);
  if (instrument_) ++diagnostics_.steps_checked;
  if (full() || contains(summary_, u)) return false;

  const std::size_t m = family_->size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    moves_[i] = nabla(*family_, i, u, sets_[i], alpha_, k_, values_[i]);
    total += moves_[i].gain;
  }
  last_average_gain_ = total / static_cast<double>(m);
  if (!(last_average_gain_ >= tau_)) return false;

  const double before = instrument_ ? value() : 0.0;
  summary_ = with_inserted(summary_, u);
  for (std::size_t i = 0; i < m; ++i) {
    const SwapOutcome& move = moves_[i];
    if (!(move.gain > 0.0)) continue;
    if (move.replaced) {
      sets_[i] = with_swapped(sets_[i], u, *move.replaced);
    } else {
      sets_[i] = with_inserted(sets_[i], u);
    }
    values_[i] = move.value_after;
  }
  if (instrument_) check_after_accept(before);
  return true;
}

void StreamState::check_after_accept(double value_before) {
  if (below(value() - value_before, tau_)) ++diagnostics_.acceptance_gain_violations;
  const double ratio = alpha_ / (alpha_ + 1.0);
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    for (ElementId x : sets_[i])
      if (!contains(trace_[i], x)) trace_[i] = with_inserted(trace_[i], x);
    if (trace_[i].empty()) continue;
    double trace_value = family_->value(i, trace_[i]);
    if (below(values_[i], ratio * trace_value)) ++diagnostics_.trace_bound_violations;
  }
}

TwoStageSolution StreamState::solution() const {
  TwoStageSolution sol;
  sol.summary = summary_;
  sol.per_function = sets_;
  sol.value = value();
  sol.ell = ell_;
  sol.k = k_;
  return sol;
}

StreamingResult run_know_opt(std::span<const ElementId> stream, const ObjectiveFamily& family,
                             double opt, const KnowOptParams& params) {
  if (!(opt > 0.0) || !std::isfinite(opt)) throw ArgumentError("opt must be positive");
  if (!(params.beta > 0.0)) throw ArgumentError("beta must be positive");
  if (params.ell < 1) throw ArgumentError("ell must be at least 1");
  const double tau = opt / (params.beta * static_cast<double>(params.ell));
  StreamState state(family, params.ell, params.k, params.alpha, tau, params.instrument);

  StreamDiagnostics cap;
  double delta = 0.0;
  for (ElementId u : stream) {
    if (params.instrument) delta = std::max(delta, singleton_average(family, u));
    state.exchange(u);
    if (params.instrument && state.last_average_gain() >
                                 delta + kDiagnosticTolerance * std::max(1.0, delta))
      ++cap.gain_cap_violations;
  }

  StreamingResult result;
  result.solution = state.solution();
  result.tau = tau;
  result.peak_stored = state.summary().size();
  result.peak_instances = 1;
  result.diagnostics = state.diagnostics();
  result.diagnostics.merge(cap);
  return result;
}

double StreamParams::resolved_beta() const {
  return beta ? *beta : (6.0 + epsilon) / (1.0 + epsilon);
}

ThresholdManager::ThresholdManager(const ObjectiveFamily& family, const StreamParams& params)
    : family_(&family), params_(params), beta_(params.resolved_beta()) {
  if (!(params_.epsilon > 0.0) || !std::isfinite(params_.epsilon))
    throw ArgumentError("epsilon must be positive");
  if (!(params_.alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw ArgumentError("beta must be positive");
  if (params_.ell < 1) throw ArgumentError("ell must be at least 1");
  if (params_.k < 1) throw ArgumentError("k must be at least 1");
}

double ThresholdManager::tau_for(int level) const {
  return std::pow(1.0 + params_.epsilon, level);
}

std::size_t ThresholdManager::instance_bound() const {
  const double base = 1.0 + params_.epsilon;
  const double span = base * beta_ * static_cast<double>(params_.ell);
  return static_cast<std::size_t>(std::ceil(std::log(span) / std::log(base))) + 1;
}

void ThresholdManager::update_thresholds(ElementId u) {
  family_->check_element(u);
  update_thresholds_with(singleton_average(*family_, u));
}

void ThresholdManager::update_thresholds_with(double singleton_average) {
  delta_ = std::max(delta_, singleton_average);
  if (!(delta_ > 0.0)) return;

  const double base = 1.0 + params_.epsilon;
  const double lo = delta_ / (base * beta_ * static_cast<double>(params_.ell));
  const double hi = delta_;
  const double log_base = std::log(base);

  // Start just outside the range and walk in so the bounds are decided by the
  // same pow() that produces tau.
  int low_level = static_cast<int>(std::floor(std::log(lo) / log_base)) - 1;
  while (tau_for(low_level) < lo) ++low_level;
  int high_level = static_cast<int>(std::floor(std::log(hi) / log_base)) + 1;
  while (tau_for(high_level) > hi) --high_level;

  for (auto it = instances_.begin(); it != instances_.end();) {
    if (it->first < low_level || it->first > high_level) {
      retired_diagnostics_.merge(it->second.state.diagnostics());
      it = instances_.erase(it);
    } else {
      ++it;
    }
  }
  for (int level = low_level; level <= high_level; ++level) {
    if (instances_.count(level)) continue;
    const double tau = tau_for(level);
    instances_.emplace(level, ThresholdInstance{level, tau,
                                                StreamState(*family_, params_.ell, params_.k,
                                                            params_.alpha, tau,
                                                            params_.instrument)});
  }
  peak_instances_ = std::max(peak_instances_, instances_.size());
  if (params_.instrument) {
    ++manager_diagnostics_.steps_checked;
    if (instances_.size() > instance_bound()) ++manager_diagnostics_.instance_count_violations;
  }
}

void ThresholdManager::process(ElementId u) {
  update_thresholds(u);
  for (auto& [level, instance] : instances_) {
    instance.state.exchange(u);
    if (params_.instrument &&
        instance.state.last_average_gain() >
            delta_ + kDiagnosticTolerance * std::max(1.0, delta_))
      ++manager_diagnostics_.gain_cap_violations;
  }
  peak_stored_ = std::max(peak_stored_, stored_elements());
}

std::vector<double> ThresholdManager::active_taus() const {
  std::vector<double> out;
  for (const auto& [level, instance] : instances_) out.push_back(instance.tau);
  return out;
}

std::size_t ThresholdManager::stored_elements() const {
  std::size_t total = 0;
  for (const auto& [level, instance] : instances_) total += instance.state.summary().size();
  return total;
}

StreamDiagnostics ThresholdManager::diagnostics() const {
  StreamDiagnostics out = manager_diagnostics_;
  out.merge(retired_diagnostics_);
  for (const auto& [level, instance] : instances_) out.merge(instance.state.diagnostics());
  return out;
}

StreamingResult ThresholdManager::best() const {
  StreamingResult result;
  const ThresholdInstance* winner = nullptr;
  double best_value = 0.0;
  for (const auto& [level, instance] : instances_) {
    double v = instance.state.value();
    if (!winner || v > best_value) {
      winner = &instance;
      best_value = v;
    }
  }
  if (winner) {
    result.solution = winner->state.solution();
    result.level = winner->level;
    result.tau = winner->tau;
  } else {
    result.solution = empty_solution(*family_, params_.ell, params_.k);
  }
  result.peak_stored = peak_stored_;
  result.peak_instances = peak_instances_;
  result.diagnostics = diagnostics();
  return result;
}

StreamingResult run_streaming(std::span<const ElementId> stream, const ObjectiveFamily& family,
                              const StreamParams& params) {
  return run_streaming_range(stream, family, params);
}

}  // namespace twostage
