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

#include "fh2/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fh2/errors.hpp"

namespace fh2 {

namespace {

void require_h_classical(const CircuitModel& model) {
  if (model.family != Family::General) {
    throw std::invalid_argument("expected a general circuit of H and classical gates");
  }
  model.validate();
  for (const Gate& g : model.gates) {
    if (g.kind != GateKind::H && !is_classical(g.kind)) {
      throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                  " not supported here (H and classical gates only)");
    }
  }
}

}  // namespace

int hadamard_count(const CircuitModel& model) {
  int h = 0;
  for (const Gate& g : model.gates) h += g.kind == GateKind::H;
  return h;
}

CircuitModel append_hadamard_layer(const CircuitModel& model) {
  require_h_classical(model);
  CircuitModel out = model;
  for (int q = 1; q <= model.width; ++q) out.gates.push_back(Gate::h(q));
  return out;
}

PathOutcome enumerate_path(const CircuitModel& model, const BitString& y) {
  require_h_classical(model);
  if (y.width() != hadamard_count(model)) {
    throw std::invalid_argument("branch label length must equal the circuit's H count");
  }
  PathOutcome out{y, false, BitString(model.width)};
  int next_branch = 0;
  for (const Gate& g : model.gates) {
    if (g.kind == GateKind::H) {
      const int wire = g.qubits[0];
      const bool branch = y.bit(++next_branch);
      if (branch) {
        out.sign = out.sign != out.reg.bit(wire);
        out.reg.set_bit(wire, true);
      } else {
        out.reg.set_bit(wire, false);
      }
    } else {
      apply_classical_gate(g, out.reg);
    }
  }
  return out;
}

StateVector reconstruct_state(const CircuitModel& model, int hadamard_cap) {
  require_h_classical(model);
  const int h = hadamard_count(model);
  if (h > hadamard_cap) {
    throw ResourceError("path reconstruction needs H count <= " + std::to_string(hadamard_cap) +
                        ", got " + std::to_string(h));
  }
  if (model.width > 30) throw ResourceError("register too wide for state reconstruction");

  // flattened trace over all 2^h branches; register kept in a packed word
  struct Step {
    bool is_h;
    Gate gate;       // classical case
    int wire;        // H case
  };
  std::vector<Step> steps;
  for (const Gate& g : model.gates) {
    if (g.kind == GateKind::H) {
      steps.push_back({true, {}, g.qubits[0]});
    } else {
      steps.push_back({false, g, 0});
    }
  }

  std::vector<std::complex<double>> amps(std::size_t{1} << model.width, 0.0);
  const double weight = std::pow(2.0, -0.5 * h);
  BitString reg(model.width);
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << h); ++y) {
    for (int p = 1; p <= model.width; ++p) reg.set_bit(p, false);
    bool sign = false;
    int branch = 0;
    for (const Step& st : steps) {
      if (st.is_h) {
        const bool b = (y >> (h - 1 - branch)) & 1;  // y position 1 = first H
        ++branch;
        if (b) {
          sign = sign != reg.bit(st.wire);
          reg.set_bit(st.wire, true);
        } else {
          reg.set_bit(st.wire, false);
        }
      } else {
        apply_classical_gate(st.gate, reg);
      }
    }
    amps[reg.to_index()] += sign ? -weight : weight;
  }
  return StateVector(model.width, std::move(amps));
}

Compilation compile_to_hc1q(const CircuitModel& model) {
  require_h_classical(model);
  const CircuitModel uprime = append_hadamard_layer(model);
  const int n = model.width;
  const int h = hadamard_count(uprime);
  const int sign_wire = h + 1;
  const int width = h + n + 2;
  const int flag = width;

  std::vector<Gate> gates;
  gates.reserve(uprime.gates.size() + 1);

  // raise the flag on branches whose sign/register block reads all zeros
  std::vector<int> ncx_qubits;
  ncx_qubits.push_back(sign_wire);
  for (int j = 1; j <= n; ++j) ncx_qubits.push_back(h + 1 + j);
  ncx_qubits.push_back(flag);
  gates.push_back(Gate::ncx(std::move(ncx_qubits), (std::uint64_t{1} << (n + 1)) - 1));

  std::vector<int> wire_pos(static_cast<std::size_t>(n) + 1);
  for (int j = 1; j <= n; ++j) wire_pos[static_cast<std::size_t>(j)] = h + 1 + j;

  int branch = 0;
  for (const Gate& g : uprime.gates) {
    if (g.kind == GateKind::H) {
      const int wire = g.qubits[0];
      ++branch;
      gates.push_back(Gate::toffoli(wire_pos[static_cast<std::size_t>(wire)], branch, sign_wire));
      wire_pos[static_cast<std::size_t>(wire)] = branch;
    } else {
      Gate mapped = g;
      for (int& q : mapped.qubits) q = wire_pos[static_cast<std::size_t>(q)];
      gates.push_back(std::move(mapped));
    }
  }

  Compilation out;
  out.circuit = make_hc1q(width, std::move(gates));
  out.hadamards = h;
  out.source_width = n;
  out.outputs.assign(wire_pos.begin() + 1, wire_pos.end());
  out.postselect[flag] = true;
  out.postselect[sign_wire] = true;
  for (int p = 1; p <= h + n + 1; ++p) {
    if (p == sign_wire) continue;
    if (std::find(out.outputs.begin(), out.outputs.end(), p) != out.outputs.end()) continue;
    out.postselect[p] = false;
  }
  return out;
}

double postselection_probability(const Compilation& compilation, int oracle_cap) {
  const int width = compilation.circuit.width;
  const double analytic = std::ldexp(1.0, -width);  // width = h + n + 2
  if (width <= oracle_cap) {
    const StateVector state = simulate(compilation.circuit, {oracle_cap});
    const double measured = postselect(state, compilation.postselect).probability;
    if (std::abs(measured - analytic) > 1e-12) {
      throw std::logic_error("postselection probability disagrees with the oracle");
    }
  }
  return analytic;
}

StateVector compiled_output_state(const Compilation& compilation, int width_cap) {
  const StateVector state = simulate(compilation.circuit, {width_cap});
  const StateVector kept = postselect(state, compilation.postselect).state;

  // read off the register on the output positions; all other positions are
  // pinned by the pattern
  const int n = compilation.source_width;
  const int width = compilation.circuit.width;
  std::uint64_t base = 0;
  for (const auto& [position, bit] : compilation.postselect) {
    if (bit) base |= std::uint64_t{1} << (width - position);
  }
  std::vector<std::complex<double>> amps(std::size_t{1} << n);
  for (std::uint64_t r = 0; r < amps.size(); ++r) {
    std::uint64_t index = base;
    for (int j = 0; j < n; ++j) {
      if ((r >> (n - 1 - j)) & 1) {
        index |= std::uint64_t{1} << (width - compilation.outputs[static_cast<std::size_t>(j)]);
      }
    }
    amps[r] = kept.amplitude(index);
  }
  return StateVector(n, std::move(amps));
}

std::string sidecar_text(const Compilation& compilation) {
  std::string out;
  for (const auto& [position, bit] : compilation.postselect) {
    out += "post " + std::to_string(position) + (bit ? " 1\n" : " 0\n");
  }
  for (int p : compilation.outputs) out += "out " + std::to_string(p) + "\n";
  return out;
}

}  // namespace fh2
