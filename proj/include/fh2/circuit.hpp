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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fh2/bitstring.hpp"

namespace fh2 {

enum class GateKind { X, Cnot, Toffoli, Ncx, Z, Cz, Ccz, Rz, H, Ch };

/// True for the self-inverse bit-flip gates (X, CNOT, Toffoli, NCX).
bool is_classical(GateKind kind);
/// True for the Z-diagonal phase gates (Z, CZ, CCZ, RZ).
bool is_diagonal(GateKind kind);
std::string_view gate_name(GateKind kind);

/// One gate. For the X family and CH, `qubits` lists controls first and the
/// target last; for Z/CZ/CCZ all entries are symmetric participants. `negative`
/// is an NCX control-polarity mask (bit i set means control i fires on 0).
/// `angle` is the RZ rotation in radians, acting as diag(e^{i angle}, e^{-i angle}).
struct Gate {
  GateKind kind;
  std::vector<int> qubits;
  std::uint64_t negative = 0;
  double angle = 0.0;

  static Gate x(int target) { return {GateKind::X, {target}}; }
  static Gate cnot(int control, int target) { return {GateKind::Cnot, {control, target}}; }
  static Gate toffoli(int c1, int c2, int target) { return {GateKind::Toffoli, {c1, c2, target}}; }
  static Gate ncx(std::vector<int> controls_then_target, std::uint64_t negative_mask) {
    return {GateKind::Ncx, std::move(controls_then_target), negative_mask};
  }
  static Gate z(int q) { return {GateKind::Z, {q}}; }
  static Gate cz(int a, int b) { return {GateKind::Cz, {a, b}}; }
  static Gate ccz(int a, int b, int c) { return {GateKind::Ccz, {a, b, c}}; }
  static Gate rz(double theta, int q) { return {GateKind::Rz, {q}, 0, theta}; }
  static Gate h(int q) { return {GateKind::H, {q}}; }
  static Gate ch(int control, int target) { return {GateKind::Ch, {control, target}}; }

  bool operator==(const Gate& other) const = default;
};

/// Checks positions are distinct and within [1, width]; throws std::invalid_argument.
void validate_gate(const Gate& gate, int width);

/// Applies one classical gate's truth-table action in place.
void apply_classical_gate(const Gate& gate, BitString& bits);

/// Width-N gate list over the self-inverse classical kinds; evaluation is a
/// permutation of {0,1}^N.
class ReversibleCircuit {
 public:
  ReversibleCircuit(int width, std::vector<Gate> gates);

  int width() const { return width_; }
  const std::vector<Gate>& gates() const { return gates_; }

  BitString apply(const BitString& input) const;
  /// C^{-1}: the gate list replayed in reverse (every gate is self-inverse).
  BitString apply_inverse(const BitString& input) const;

 private:
  int width_;
  std::vector<Gate> gates_;
};

/// Deterministic function of (width, gate_count, seed); gates drawn uniformly
/// from X/CNOT/Toffoli (kinds requiring more wires than available are skipped)
/// with uniformly chosen distinct positions.
ReversibleCircuit random_reversible(int width, int gate_count, std::uint64_t seed);

enum class Family { Hc1q, Hcmq, Iqp, General };

std::string_view family_name(Family family);

/// A circuit in one of the supported families.
///   hc1q    - classical core, Hadamard layers on qubits 1..N-1, qubit N fixed
///   hcmq    - classical core, Hadamard layers on qubits 1..N-m, m fixed
///   iqp     - Z-diagonal core between full Hadamard layers
///   general - explicit gate list (classical, H, CH, and diagonal gates)
struct CircuitModel {
  Family family = Family::General;
  int width = 0;
  int fixed = 0;  // hc1q: 1, hcmq: m in [1, N), otherwise 0
  std::vector<Gate> gates;

  /// Width of the Hadamard block (N - fixed).
  int hadamard_width() const { return width - fixed; }
  /// The classical core of an hc1q/hcmq model.
  ReversibleCircuit core() const;
  /// Expansion to an explicit general gate list (H layers made explicit).
  CircuitModel to_general() const;

  /// Structural validation; throws std::invalid_argument.
  void validate() const;

  bool operator==(const CircuitModel& other) const = default;
};

CircuitModel make_hc1q(int width, std::vector<Gate> gates);
CircuitModel make_hcmq(int width, int fixed, std::vector<Gate> gates);
CircuitModel make_iqp(int width, std::vector<Gate> gates);
CircuitModel make_general(int width, std::vector<Gate> gates);

/// Parses the line-based circuit file format. Throws ParseError with the
/// offending line number.
CircuitModel parse_circuit(std::istream& in);
CircuitModel parse_circuit(const std::string& text);
CircuitModel load_circuit(const std::string& path);

/// Canonical text form; parse_circuit(serialize_circuit(c)) == c structurally.
std::string serialize_circuit(const CircuitModel& model);

}  // namespace fh2
