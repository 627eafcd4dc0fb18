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

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"

namespace fh2 {

/// Dense 2^N statevector. Amplitude indices follow the BitString convention:
/// qubit position 1 is the most significant index bit.
class StateVector {
 public:
  StateVector(int width, std::vector<std::complex<double>> amplitudes);
  static StateVector zero_state(int width);
  static StateVector basis(int width, const BitString& value);

  int width() const { return width_; }
  std::size_t size() const { return amps_.size(); }
  std::complex<double> amplitude(std::uint64_t index) const { return amps_[index]; }
  std::complex<double> amplitude(const BitString& value) const;
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  double norm_squared() const;

  /// In-place gate application (H, CH, classical, and diagonal kinds).
  void apply(const Gate& gate);

 private:
  int width_;
  std::vector<std::complex<double>> amps_;
};

struct SimulateOptions {
  int width_cap = 22;  // memory is the binding constraint
};

/// Exact final state of the model before measurement. HC1Q/HCmQ/IQP are first
/// expanded to their general form (Hadamard layers plus core).
StateVector simulate(const CircuitModel& model, const SimulateOptions& options = {});

/// |<z|psi>|^2
double output_probability(const StateVector& psi, const BitString& z);

/// All 2^N outcome probabilities, indexed like amplitudes.
std::vector<double> probabilities(const StateVector& psi);

/// Required bit per qubit position, over a subset of positions.
using PostselectionPattern = std::map<int, bool>;

struct PostselectResult {
  StateVector state;   // renormalized, pattern positions projected
  double probability;  // squared norm of the projected component
};

/// Outcomes below this are reported as ZeroProbabilityError, not noise.
inline constexpr double kZeroProbabilityThreshold = 1e-14;

PostselectResult postselect(const StateVector& psi, const PostselectionPattern& pattern);

/// |<psi|phi>|^2 (global-phase invariant).
double fidelity(const StateVector& psi, const StateVector& phi);

/// Computational-basis sample; deterministic function of (psi, seed, label, index).
BitString sample_measurement(const StateVector& psi, std::uint64_t seed,
                             std::uint64_t index = 0, std::string_view label = "measure");

}  // namespace fh2
