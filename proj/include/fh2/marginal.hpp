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
#include <vector>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"

namespace fh2 {

inline constexpr int kMatchingSetCap = 16;  // cost is 2^k inverse evaluations

/// S = { y in the Hadamard block : C(y 0^m) agrees with C(x 0^m) beyond the
/// first k bits }, found by inverting each k-bit prefix alpha against x's
/// suffix and keeping preimages whose fixed block is zero. |S| <= 2^k and x
/// is always a member.
std::vector<BitString> build_matching_set(const CircuitModel& model, const BitString& x, int k,
                                          int cap = kMatchingSetCap);

/// f(x) = 2^{-k} sum_{y in S} (-1)^{z . prefix_k(C(x 0^m)) + z . prefix_k(C(y 0^m))};
/// always in [-1, 1], and its mean over uniform x is the k-qubit marginal p_z.
double marginal_f(const CircuitModel& model, const BitString& x, const BitString& z,
                  int cap = kMatchingSetCap);

struct MarginalOptions {
  double delta = 0.05;                    // all-entries failure budget, split 2^-k per entry
  std::int64_t budget = 4'000'000'000;    // refuse when per-entry T * 2^k exceeds this
  int threads = 0;
  int cap = kMatchingSetCap;
};

/// Signed per-outcome estimates for the measured positions.
struct MarginalEstimate {
  std::vector<int> positions;  // measured qubit positions, table key order
  int k = 0;
  std::vector<double> table;   // index = z (position order, first position = MSB)
  double epsilon;              // 1 / (5 * 2^{2k} * r)
  int r;                       // L1-error denominator
  std::int64_t samples;        // T per entry
  double delta;
  std::uint64_t seed;
};

/// Estimates every k-bit outcome's signed marginal with fresh uniform samples
/// per entry; epsilon = 1/(5 * 2^{2k} r) and T from the Chernoff plan at
/// per-entry failure delta / 2^k. Deterministic given (seed, k, r),
/// independent of thread count.
MarginalEstimate estimate_marginals(const CircuitModel& model, int k, int r, std::uint64_t seed,
                                    const MarginalOptions& options = {});

/// Same, measuring an arbitrary subset of the Hadamard-block positions (wire
/// labels are permuted internally; table keys follow the given order).
MarginalEstimate estimate_marginals(const CircuitModel& model, const std::vector<int>& positions,
                                    int r, std::uint64_t seed, const MarginalOptions& options = {});

struct NormalizedMarginal {
  int k = 0;
  std::vector<double> table;  // q_z = |p~_z| / sum |p~_z|
};

NormalizedMarginal normalize(const MarginalEstimate& estimate);

/// Outcome of the cumulative-interval draw for a value in [0, 1): the z (in
/// dictionary order) whose interval contains it; values at or beyond the total
/// mass map to the maximal z.
BitString pick_outcome(const NormalizedMarginal& q, long double value);

/// Draws one sample using an m-bit uniform fraction from the stream
/// (seed, "sample", index).
BitString sample_from(const NormalizedMarginal& q, int precision_bits, std::uint64_t seed,
                      std::uint64_t index = 0);

/// Full pipeline: estimate -> normalize -> draw n_samples (sub-streams per
/// sample). The sampled distribution is within L1 1/r of the true marginal,
/// up to the noise of n_samples, with probability >= 1 - delta.
std::vector<BitString> sample_marginal(const CircuitModel& model, int k, int r,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       const MarginalOptions& options = {},
                                       int precision_bits = 64);

}  // namespace fh2
