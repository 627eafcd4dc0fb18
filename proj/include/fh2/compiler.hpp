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

#include <string>
#include <vector>

#include "fh2/bitstring.hpp"
#include "fh2/circuit.hpp"
#include "fh2/statevector.hpp"

namespace fh2 {

/// Number of H gates in a general circuit.
int hadamard_count(const CircuitModel& model);

/// U' = U followed by one H on each qubit, in qubit order. Input must contain
/// only H and classical gates.
CircuitModel append_hadamard_layer(const CircuitModel& model);

/// End state of one nondeterministic branch: the branch label y, the
/// accumulated sign bit, and the register value.
struct PathOutcome {
  BitString path;  // y, one bit per H gate in circuit order
  bool sign;       // s(y)
  BitString reg;   // z(y)
};

/// Deterministic trace of branch y: classical gates update the register by
/// their truth table; the l-th H gate on wire j consumes y_l (0: z_j <- 0;
/// 1: s <- s XOR z_j, z_j <- 1).
PathOutcome enumerate_path(const CircuitModel& model, const BitString& y);

/// 2^{-h/2} sum_y (-1)^{s(y)} |z(y)> accumulated over all 2^h branches.
StateVector reconstruct_state(const CircuitModel& model, int hadamard_cap = 20);

/// Output of the hc1q compiler. Qubit layout of the compiled circuit:
/// branch bits at 1..h, the sign wire at h+1, the register at h+2..h+n+1,
/// and the hc1q fixed qubit (the accept flag) at h+n+2.
struct Compilation {
  CircuitModel circuit;            // hc1q, width h + n + 2
  PostselectionPattern postselect; // flag -> 1, sign wire -> 1, retired wires -> 0
  std::vector<int> outputs;        // physical position carrying source wire j
  int hadamards;                   // h: H count of U' (source circuit + appended layer)
  int source_width;                // n
};

/// Compiles an H+classical circuit u into an hc1q circuit whose postselected,
/// output-position state equals u|0^n>. Wires are streamed: each H becomes a
/// Toffoli folding the old register bit into the sign wire, after which the
/// register bit lives at that H's branch position; retired positions hold
/// branch garbage and are postselected to 0. A leading NCX raises the flag on
/// exactly the branches whose sign/register block started at zero.
Compilation compile_to_hc1q(const CircuitModel& model);

/// 2^{-(h+n+2)}: the probability that every postselected position reads its
/// required value (outputs marginalized). When the compiled width fits the
/// oracle cap the analytic value is checked against the simulated circuit to
/// 1e-12 before being returned.
double postselection_probability(const Compilation& compilation, int oracle_cap = 22);

/// Postselected output state on the source wires, via the statevector oracle.
StateVector compiled_output_state(const Compilation& compilation, int width_cap = 22);

/// Sidecar descriptor: `post <position> <bit>` lines then `out <position>`
/// lines, in wire order.
std::string sidecar_text(const Compilation& compilation);

}  // namespace fh2
