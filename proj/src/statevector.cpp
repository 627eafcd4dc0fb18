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

#include "fh2/statevector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fh2/errors.hpp"
#include "fh2/rng.hpp"

namespace fh2 {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// index bit mask of a 1-based qubit position
inline std::uint64_t position_mask(int width, int position) {
  return std::uint64_t{1} << (width - position);
}

}  // namespace

StateVector::StateVector(int width, std::vector<std::complex<double>> amplitudes)
    : width_(width), amps_(std::move(amplitudes)) {
  if (width < 0 || width > 62) throw std::invalid_argument("statevector width out of range");
  if (amps_.size() != (std::size_t{1} << width)) {
    throw std::invalid_argument("amplitude count must be 2^width");
  }
}

StateVector StateVector::zero_state(int width) {
  std::vector<std::complex<double>> amps(std::size_t{1} << width, 0.0);
  amps[0] = 1.0;
  return StateVector(width, std::move(amps));
}

StateVector StateVector::basis(int width, const BitString& value) {
  if (value.width() != width) throw std::invalid_argument("basis value width mismatch");
  std::vector<std::complex<double>> amps(std::size_t{1} << width, 0.0);
  amps[value.to_index()] = 1.0;
  return StateVector(width, std::move(amps));
}

std::complex<double> StateVector::amplitude(const BitString& value) const {
  if (value.width() != width_) throw std::invalid_argument("width mismatch");
  return amps_[value.to_index()];
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::apply(const Gate& gate) {
  validate_gate(gate, width_);
  const std::uint64_t n = amps_.size();
  switch (gate.kind) {
    case GateKind::H: {
      const std::uint64_t m = position_mask(width_, gate.qubits[0]);
      for (std::uint64_t i = 0; i < n; ++i) {
        if (i & m) continue;
        const auto a = amps_[i], b = amps_[i | m];
        amps_[i] = (a + b) * kInvSqrt2;
        amps_[i | m] = (a - b) * kInvSqrt2;
      }
      return;
    }
    case GateKind::Ch: {
      const std::uint64_t c = position_mask(width_, gate.qubits[0]);
      const std::uint64_t m = position_mask(width_, gate.qubits[1]);
      for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & m) || !(i & c)) continue;
        const auto a = amps_[i], b = amps_[i | m];
        amps_[i] = (a + b) * kInvSqrt2;
        amps_[i | m] = (a - b) * kInvSqrt2;
      }
      return;
    }
    case GateKind::X:
    case GateKind::Cnot:
    case GateKind::Toffoli:
    case GateKind::Ncx: {
      // basis permutation: swap amplitude pairs where the controls fire
      const std::uint64_t t = position_mask(width_, gate.qubits.back());
      std::uint64_t fire_value = 0, fire_mask = 0;
      for (std::size_t j = 0; j + 1 < gate.qubits.size(); ++j) {
        const std::uint64_t cm = position_mask(width_, gate.qubits[j]);
        fire_mask |= cm;
        const bool positive = gate.kind != GateKind::Ncx || !((gate.negative >> j) & 1);
        if (positive) fire_value |= cm;
      }
      for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & t) || (i & fire_mask) != fire_value) continue;
        std::swap(amps_[i], amps_[i | t]);
      }
      return;
    }
    case GateKind::Z:
    case GateKind::Cz:
    case GateKind::Ccz: {
      std::uint64_t all = 0;
      for (int q : gate.qubits) all |= position_mask(width_, q);
      for (std::uint64_t i = 0; i < n; ++i) {
        if ((i & all) == all) amps_[i] = -amps_[i];
      }
      return;
    }
    case GateKind::Rz: {
      const std::uint64_t m = position_mask(width_, gate.qubits[0]);
      const std::complex<double> p0 = std::polar(1.0, gate.angle);   // e^{i theta} on |0>
      const std::complex<double> p1 = std::polar(1.0, -gate.angle);  // e^{-i theta} on |1>
      for (std::uint64_t i = 0; i < n; ++i) amps_[i] *= (i & m) ? p1 : p0;
      return;
    }
  }
}

StateVector simulate(const CircuitModel& model, const SimulateOptions& options) {
  model.validate();
  if (model.width > options.width_cap) {
    throw ResourceError("circuit width " + std::to_string(model.width) +
                        " exceeds statevector cap " + std::to_string(options.width_cap));
  }
  const CircuitModel general = model.to_general();
  StateVector state = StateVector::zero_state(general.width);
  for (const Gate& g : general.gates) state.apply(g);
  return state;
}

double output_probability(const StateVector& psi, const BitString& z) {
  if (z.width() != psi.width()) throw std::invalid_argument("outcome width mismatch");
  return std::norm(psi.amplitude(z.to_index()));
}

std::vector<double> probabilities(const StateVector& psi) {
  std::vector<double> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(psi.amplitude(i));
  return out;
}

PostselectResult postselect(const StateVector& psi, const PostselectionPattern& pattern) {
  std::uint64_t mask = 0, value = 0;
  for (const auto& [position, bit] : pattern) {
    if (position < 1 || position > psi.width()) {
      throw std::invalid_argument("postselection position out of range");
    }
    const std::uint64_t m = std::uint64_t{1} << (psi.width() - position);
    mask |= m;
    if (bit) value |= m;
  }
  double kept = 0.0;
  std::vector<std::complex<double>> amps(psi.size(), 0.0);
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if ((i & mask) == value) {
      amps[i] = psi.amplitude(i);
      kept += std::norm(amps[i]);
    }
  }
  if (kept <= kZeroProbabilityThreshold) {
    throw ZeroProbabilityError("postselection outcome has zero probability");
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps) a *= scale;
  return {StateVector(psi.width(), std::move(amps)), kept};
}

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.width() != phi.width()) throw std::invalid_argument("width mismatch");
  std::complex<double> overlap = 0.0;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    overlap += std::conj(psi.amplitude(i)) * phi.amplitude(i);
  }
  return std::norm(overlap);
}

BitString sample_measurement(const StateVector& psi, std::uint64_t seed, std::uint64_t index,
                             std::string_view label) {
  Prng rng(seed, label, index);
  const double u = rng.next_double();
  long double cum = 0.0L;
  std::uint64_t last = psi.size() - 1;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    cum += std::norm(psi.amplitude(i));
    if (static_cast<long double>(u) < cum) return BitString::from_index(psi.width(), i);
  }
  return BitString::from_index(psi.width(), last);
}

}  // namespace fh2
