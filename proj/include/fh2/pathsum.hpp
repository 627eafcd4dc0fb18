// Copyright 2026 The fh2lab developers
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

#include <cstdint>
#include <optional>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"

namespace fh2 {

/// Sample-size plan for an additive-error mean estimate of variables bounded
/// by 1: `samples` is the smallest T with 2 exp(-T epsilon^2 / 2) <= delta.
struct ChernoffPlan {
  double epsilon;        // target additive error
  double delta;          // failure probability
  std::int64_t samples;  // T
};

ChernoffPlan chernoff_plan(double epsilon, double delta);

/// A Monte-Carlo answer together with its guarantee: |value - truth| <= epsilon
/// with probability >= confidence, using `samples` draws from the stream
/// addressed by `seed`.
struct ProbEstimate {
  double value;
  double epsilon;
  double confidence;
  std::int64_t samples;
  std::uint64_t seed;
};

struct ExactOptions {
  int width_cap = 24;  // cost is one circuit evaluation per Hadamard-block input
};

/// Exact p_z for an hc1q circuit via the single path sum
/// amp = 2^{-(N-1)} sum_x (-1)^{prefix(C(x0)) . z} [C_N(x0) = z_N].
double hc1q_prob_exact(const CircuitModel& model, const BitString& z,
                       const ExactOptions& options = {});

/// Exact p_{(s,t)} for an hcmq circuit; z is the full N-bit outcome (s, t).
double hcmq_prob_exact(const CircuitModel& model, const BitString& z,
                       const ExactOptions& options = {});

/// Exact p_z for an IQP circuit: |2^{-N} sum_x (-1)^{x.z} d(x)|^2 where d is
/// the diagonal phase product.
double iqp_prob_exact(const CircuitModel& model, const BitString& z,
                      const ExactOptions& options = {});

/// Family dispatch (hc1q/hcmq/iqp).
double prob_exact(const CircuitModel& model, const BitString& z, const ExactOptions& options = {});

struct EstimateOptions {
  int threads = 0;                 // 0 = resolve from environment/hardware
  std::uint64_t stream_index = 0;  // substream selector for independent estimates
};

/// Monte-Carlo estimate of p_z over fresh i.i.d. uniform pairs (x, y); the
/// mean of f(x,y) = (-1)^{prefix(C(x0)).z + prefix(C(y0)).z} [C_N(x0)=z_N][C_N(y0)=z_N].
/// Deterministic given (plan, seed, stream_index), independent of thread count.
ProbEstimate hc1q_prob_estimate(const CircuitModel& model, const BitString& z,
                                const ChernoffPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options = {});

/// HCmQ generalization; with fixed = 1 this is hc1q_prob_estimate (same
/// samples, same value for the same seed).
ProbEstimate hcmq_prob_estimate(const CircuitModel& model, const BitString& z,
                                const ChernoffPlan& plan, std::uint64_t seed,
                                const EstimateOptions& options = {});

/// IQP estimate. f is complex here; real and imaginary parts are estimated
/// jointly on 2T samples (T doubled internally) so that the union bound keeps
/// the plan's (epsilon, delta) guarantee on the reported real part.
ProbEstimate iqp_prob_estimate(const CircuitModel& model, const BitString& z,
                               const ChernoffPlan& plan, std::uint64_t seed,
                               const EstimateOptions& options = {});

/// Family dispatch (hc1q/hcmq/iqp); refuses general circuits.
ProbEstimate prob_estimate(const CircuitModel& model, const BitString& z, const ChernoffPlan& plan,
                           std::uint64_t seed, const EstimateOptions& options = {});

}  // namespace fh2
