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

#include "fh2/circuit.hpp"

#include <algorithm>
#include <stdexcept>

#include "fh2/rng.hpp"

namespace fh2 {

bool is_classical(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::Cnot:
    case GateKind::Toffoli:
    case GateKind::Ncx:
      return true;
    default:
      return false;
  }
}

bool is_diagonal(GateKind kind) {
  switch (kind) {
    case GateKind::Z:
    case GateKind::Cz:
    case GateKind::Ccz:
    case GateKind::Rz:
      return true;
    default:
      return false;
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Cnot: return "cnot";
    case GateKind::Toffoli: return "toffoli";
    case GateKind::Ncx: return "ncx";
    case GateKind::Z: return "z";
    case GateKind::Cz: return "cz";
    case GateKind::Ccz: return "ccz";
    case GateKind::Rz: return "rz";
    case GateKind::H: return "h";
    case GateKind::Ch: return "ch";
  }
  return "?";
}

namespace {

std::size_t expected_arity(GateKind kind) {
  switch (kind) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::Rz:
    case GateKind::H:
      return 1;
    case GateKind::Cnot:
    case GateKind::Cz:
    case GateKind::Ch:
      return 2;
    case GateKind::Toffoli:
    case GateKind::Ccz:
      return 3;
    case GateKind::Ncx:
      return 0;  // variable, >= 2
  }
  return 0;
}

}  // namespace

void validate_gate(const Gate& gate, int width) {
  const std::size_t arity = expected_arity(gate.kind);
  if (gate.kind == GateKind::Ncx) {
    if (gate.qubits.size() < 2) throw std::invalid_argument("ncx needs at least one control");
    if (gate.qubits.size() > 65) throw std::invalid_argument("ncx supports at most 64 controls");
  } else if (gate.qubits.size() != arity) {
    throw std::invalid_argument(std::string(gate_name(gate.kind)) + ": wrong position count");
  }
  for (int q : gate.qubits) {
    if (q < 1 || q > width) {
      throw std::invalid_argument(std::string(gate_name(gate.kind)) + ": position " +
                                  std::to_string(q) + " out of range 1.." + std::to_string(width));
    }
  }
  std::vector<int> sorted = gate.qubits;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(gate_name(gate.kind)) + ": positions must be distinct");
  }
}

void apply_classical_gate(const Gate& gate, BitString& bits) {
  switch (gate.kind) {
    case GateKind::X:
      bits.set_bit(gate.qubits[0], !bits.bit(gate.qubits[0]));
      return;
    case GateKind::Cnot:
      if (bits.bit(gate.qubits[0])) bits.set_bit(gate.qubits[1], !bits.bit(gate.qubits[1]));
      return;
    case GateKind::Toffoli:
      if (bits.bit(gate.qubits[0]) && bits.bit(gate.qubits[1])) {
        bits.set_bit(gate.qubits[2], !bits.bit(gate.qubits[2]));
      }
      return;
    case GateKind::Ncx: {
      const std::size_t n_controls = gate.qubits.size() - 1;
      for (std::size_t i = 0; i < n_controls; ++i) {
        const bool want = !((gate.negative >> i) & 1);
        if (bits.bit(gate.qubits[i]) != want) return;
      }
      const int target = gate.qubits.back();
      bits.set_bit(target, !bits.bit(target));
      return;
    }
    default:
      throw std::invalid_argument("not a classical gate");
  }
}

ReversibleCircuit::ReversibleCircuit(int width, std::vector<Gate> gates)
    : width_(width), gates_(std::move(gates)) {
  if (width < 1) throw std::invalid_argument("circuit width must be at least 1");
  for (const Gate& g : gates_) {
    if (!is_classical(g.kind)) {
      throw std::invalid_argument("reversible circuit admits only classical gates");
    }
    validate_gate(g, width_);
  }
}

BitString ReversibleCircuit::apply(const BitString& input) const {
  if (input.width() != width_) throw std::invalid_argument("input width mismatch");
  BitString w = input;
  for (const Gate& g : gates_) apply_classical_gate(g, w);
  return w;
}

BitString ReversibleCircuit::apply_inverse(const BitString& input) const {
  if (input.width() != width_) throw std::invalid_argument("input width mismatch");
  BitString w = input;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) apply_classical_gate(*it, w);
  return w;
}

ReversibleCircuit random_reversible(int width, int gate_count, std::uint64_t seed) {
  if (width < 1) throw std::invalid_argument("circuit width must be at least 1");
  if (gate_count < 0) throw std::invalid_argument("gate count must be non-negative");
  Prng rng(seed, "random-reversible");
  const int max_arity = std::min(width, 3);
  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(gate_count));
  std::vector<int> pos(3);
  for (int i = 0; i < gate_count; ++i) {
    const int arity = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_arity)));
    for (int j = 0; j < arity; ++j) {
      bool fresh;
      do {
        pos[j] = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width)));
        fresh = true;
        for (int k = 0; k < j; ++k) fresh = fresh && pos[k] != pos[j];
      } while (!fresh);
    }
    switch (arity) {
      case 1: gates.push_back(Gate::x(pos[0])); break;
      case 2: gates.push_back(Gate::cnot(pos[0], pos[1])); break;
      default: gates.push_back(Gate::toffoli(pos[0], pos[1], pos[2])); break;
    }
  }
  return ReversibleCircuit(width, std::move(gates));
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Hc1q: return "hc1q";
    case Family::Hcmq: return "hcmq";
    case Family::Iqp: return "iqp";
    case Family::General: return "general";
  }
  return "?";
}

void CircuitModel::validate() const {
  if (width < 1) throw std::invalid_argument("circuit width must be at least 1");
  switch (family) {
    case Family::Hc1q:
      if (fixed != 1) throw std::invalid_argument("hc1q has exactly one fixed qubit");
      break;
    case Family::Hcmq:
      if (fixed < 1 || fixed >= width) {
        throw std::invalid_argument("hcmq requires 1 <= fixed < width");
      }
      break;
    default:
      if (fixed != 0) throw std::invalid_argument("only hc1q/hcmq have fixed qubits");
      break;
  }
  for (const Gate& g : gates) {
    validate_gate(g, width);
    const bool ok = (family == Family::Hc1q || family == Family::Hcmq) ? is_classical(g.kind)
                    : family == Family::Iqp                            ? is_diagonal(g.kind)
                                                                       : true;
    if (!ok) {
      throw std::invalid_argument(std::string(gate_name(g.kind)) + " not allowed in " +
                                  std::string(family_name(family)) + " family");
    }
  }
}

ReversibleCircuit CircuitModel::core() const {
  if (family != Family::Hc1q && family != Family::Hcmq) {
    throw std::invalid_argument("classical core defined for hc1q/hcmq only");
  }
  return ReversibleCircuit(width, gates);
}

CircuitModel CircuitModel::to_general() const {
  CircuitModel out;
  out.family = Family::General;
  out.width = width;
  if (family == Family::General) {
    out.gates = gates;
    return out;
  }
  const int h_block = family == Family::Iqp ? width : hadamard_width();
  for (int q = 1; q <= h_block; ++q) out.gates.push_back(Gate::h(q));
  out.gates.insert(out.gates.end(), gates.begin(), gates.end());
  for (int q = 1; q <= h_block; ++q) out.gates.push_back(Gate::h(q));
  return out;
}

namespace {

CircuitModel make_model(Family family, int width, int fixed, std::vector<Gate> gates) {
  CircuitModel m{family, width, fixed, std::move(gates)};
  m.validate();
  return m;
}

}  // namespace

CircuitModel make_hc1q(int width, std::vector<Gate> gates) {
  return make_model(Family::Hc1q, width, 1, std::move(gates));
}
CircuitModel make_hcmq(int width, int fixed, std::vector<Gate> gates) {
  return make_model(Family::Hcmq, width, fixed, std::move(gates));
}
CircuitModel make_iqp(int width, std::vector<Gate> gates) {
  return make_model(Family::Iqp, width, 0, std::move(gates));
}
CircuitModel make_general(int width, std::vector<Gate> gates) {
  return make_model(Family::General, width, 0, std::move(gates));
}

}  // namespace fh2
