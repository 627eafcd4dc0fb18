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
#include <string>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"
#include "fh2/pathsum.hpp"

namespace fh2 {

/// Promise-problem instance: decide whether some outcome z has
/// |p_z - q_z| >= a (YES) versus all outcomes have |p_z - q_z| <= b (NO),
/// for the output distributions p, q of u1, u2.
struct PddMaxInstance {
  CircuitModel u1, u2;  // same width
  double a, b;          // 0 <= b < a <= 1
};

/// Validates widths and thresholds; `min_gap` optionally enforces a declared
/// lower bound on a - b.
PddMaxInstance make_instance(CircuitModel u1, CircuitModel u2, double a, double b,
                             double min_gap = 0.0);

/// T = ceil(128 k / (a-b)^2): the sample count that makes the acceptance
/// bounds alpha/beta hold with exponent k.
std::int64_t protocol_samples(double a, double b, int k);

/// alpha = (a/2)(1 - 2 e^{-k})^2, the YES-side acceptance lower bound.
double completeness_bound(double a, int k);
/// beta = 4 e^{-k} - 4 e^{-2k}, the NO-side acceptance upper bound.
double soundness_bound(int k);

struct MerlinMessage {
  BitString z;
  bool coin;  // which circuit was sampled (coin = 1 -> u2)
};

/// Honest prover: flips a fair coin s and measures u_{s+1}|0^N> (simulated
/// with the statevector oracle at desk scale).
MerlinMessage honest_merlin(const PddMaxInstance& instance, std::uint64_t seed,
                            int width_cap = 22);

struct MaOutcome {
  bool accepted;  // |p~ - q~| >= threshold
  BitString witness;
  ProbEstimate p_estimate, q_estimate;
  double threshold;      // a - (a-b)/4
  std::int64_t samples;  // T per circuit
  int k;
  std::uint64_t seed;
  std::string method;  // "pathsum" (verifier) or "oracle-frequency" (decider)
  int coin = -1;       // honest Merlin's coin when the protocol ran end to end
};

/// Classical verifier: estimates p_z and q_z with the family's path-sum
/// estimator at epsilon = (a-b)/8 and T = ceil(128 k/(a-b)^2), and accepts
/// iff |p~ - q~| >= a - (a-b)/4. Makes no statevector-oracle calls; refuses
/// general circuits.
MaOutcome arthur_verify(const PddMaxInstance& instance, const BitString& z, int k,
                        std::uint64_t seed, int threads = 0);

/// Single-message protocol: honest Merlin then the verifier. Accepts YES
/// instances with probability >= alpha and NO instances with probability
/// <= beta.
MaOutcome run_ma(const PddMaxInstance& instance, int k, std::uint64_t seed, int threads = 0,
                 int width_cap = 22);

/// Decision algorithm with measurement-frequency estimators: the candidate z
/// and both frequency counts come from oracle measurement sampling (recorded
/// in `method`), with the same threshold and bounds as the protocol.
MaOutcome bqp_decider(const PddMaxInstance& instance, int k, std::uint64_t seed,
                      int width_cap = 22);

/// Reduction output: u1 embeds the decision circuit v between a flag CNOT and
/// CH fan-out onto m ancillas (then uncomputes v); u2 is the all-H circuit.
struct ReductionResult {
  PddMaxInstance instance;
  int source_width;  // n
  int ancillas;      // m
  int error_exponent;  // r
};

/// Builds the instance over n+m+1 qubits with a = (1-2^{-r})^2 - 2^{-(n+m+1)}
/// and b = max(2^{-m}, 2^{-r}) + 2^{-(n+m+1)}; throws when a <= b.
ReductionResult bqp_reduction(const CircuitModel& v, int r, int m);

/// Instance file (JSON {u1, u2, a, b}); circuit paths are resolved relative
/// to the instance file's directory.
PddMaxInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const std::string& u1_path,
                   const std::string& u2_path, double a, double b);

}  // namespace fh2
