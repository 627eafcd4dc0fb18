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

#include <cmath>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "fh2/compiler.hpp"
#include "fh2/errors.hpp"
#include "support/generators.hpp"

using namespace fh2;

namespace {

// worked two-qubit example: X on wire 1, then the appended H layer
CircuitModel example_uprime() {
  return make_general(2, {Gate::x(1), Gate::h(1), Gate::h(2)});
}

}  // namespace

TEST_CASE("append_hadamard_layer") {
  const CircuitModel u = make_general(2, {Gate::x(1)});
  const CircuitModel uprime = append_hadamard_layer(u);
  REQUIRE(uprime.gates == std::vector<Gate>{Gate::x(1), Gate::h(1), Gate::h(2)});

  REQUIRE(append_hadamard_layer(make_general(1, {})).gates == std::vector<Gate>{Gate::h(1)});

  const CircuitModel twice = append_hadamard_layer(make_general(1, {Gate::h(1)}));
  REQUIRE(hadamard_count(twice) == 2);

  REQUIRE_THROWS_AS(append_hadamard_layer(make_general(2, {Gate::cz(1, 2)})),
                    std::invalid_argument);
}

TEST_CASE("enumerate_path: worked example tree") {
  const CircuitModel uprime = example_uprime();
  const struct {
    const char* y;
    int sign;
    const char* reg;
  } expected[] = {{"00", 0, "00"}, {"01", 0, "01"}, {"10", 1, "10"}, {"11", 1, "11"}};
  for (const auto& row : expected) {
    const PathOutcome out = enumerate_path(uprime, BitString::from_string(row.y));
    REQUIRE(static_cast<int>(out.sign) == row.sign);
    REQUIRE(out.reg.str() == row.reg);
  }
  REQUIRE_THROWS_AS(enumerate_path(uprime, BitString::from_string("101")),
                    std::invalid_argument);
}

TEST_CASE("enumerate_path: no Hadamards leaves one branch") {
  const CircuitModel u = make_general(3, {Gate::x(1)});
  const PathOutcome out = enumerate_path(u, BitString(0));
  REQUIRE_FALSE(out.sign);
  REQUIRE(out.reg.str() == "100");
}

TEST_CASE("branch traces are exhaustive: 2^h of them") {
  const CircuitModel u = testing::random_h_classical(3, 5, 6, 17);
  const int h = hadamard_count(u);
  std::set<std::pair<bool, std::uint64_t>> outcomes;
  int count = 0;
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << h); ++y) {
    const PathOutcome out = enumerate_path(u, BitString::from_index(h, y));
    outcomes.insert({out.sign, out.reg.to_index()});
    ++count;
  }
  REQUIRE(count == 1 << h);
}

TEST_CASE("reconstruct_state: worked example gives (1/2)(|00>+|01>-|10>-|11>)") {
  const StateVector psi = reconstruct_state(example_uprime());
  REQUIRE(std::abs(psi.amplitude(BitString::from_string("00")) - 0.5) <= 1e-12);
  REQUIRE(std::abs(psi.amplitude(BitString::from_string("01")) - 0.5) <= 1e-12);
  REQUIRE(std::abs(psi.amplitude(BitString::from_string("10")) + 0.5) <= 1e-12);
  REQUIRE(std::abs(psi.amplitude(BitString::from_string("11")) + 0.5) <= 1e-12);
}

TEST_CASE("reconstruct_state: no Hadamards, classical image of zero") {
  const StateVector psi = reconstruct_state(make_general(2, {}));
  REQUIRE(std::abs(psi.amplitude(BitString::from_string("00")) - 1.0) <= 1e-12);
}

TEST_CASE("reconstruct_state agrees with the oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int width = 2 + static_cast<int>(seed % 3);
    const CircuitModel u = testing::random_h_classical(width, 6, 4 + seed % 7, seed);
    const StateVector rebuilt = reconstruct_state(u);
    const StateVector oracle = simulate(u);
    REQUIRE(fidelity(rebuilt, oracle) == Catch::Approx(1.0).margin(1e-10));
  }
  REQUIRE_THROWS_AS(reconstruct_state(example_uprime(), 1), ResourceError);
}

TEST_CASE("compile: worked example") {
  const CircuitModel u = make_general(2, {Gate::x(1)});
  const Compilation comp = compile_to_hc1q(u);
  REQUIRE(comp.hadamards == 2);
  REQUIRE(comp.source_width == 2);
  REQUIRE(comp.circuit.width == 6);
  REQUIRE(comp.circuit.family == Family::Hc1q);

  const StateVector out = compiled_output_state(comp);
  REQUIRE(output_probability(out, BitString::from_string("10")) ==
          Catch::Approx(1.0).margin(1e-10));
  REQUIRE(postselection_probability(comp) == Catch::Approx(1.0 / 64.0).margin(1e-15));
}

TEST_CASE("compile: empty single-wire circuit") {
  const Compilation comp = compile_to_hc1q(make_general(1, {}));
  REQUIRE(comp.hadamards == 1);
  REQUIRE(comp.circuit.width == 4);
  const StateVector out = compiled_output_state(comp);
  REQUIRE(output_probability(out, BitString::from_string("0")) ==
          Catch::Approx(1.0).margin(1e-10));
  REQUIRE(postselection_probability(comp) == Catch::Approx(1.0 / 16.0).margin(1e-15));
}

TEST_CASE("compile: H-X-H sequence against the oracle") {
  const CircuitModel u = make_general(1, {Gate::h(1), Gate::x(1), Gate::h(1)});
  const Compilation comp = compile_to_hc1q(u);
  REQUIRE(fidelity(compiled_output_state(comp), simulate(u)) ==
          Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("compile: soundness on random circuits") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const int extra_h = static_cast<int>(seed % 5);
    const CircuitModel u = testing::random_h_classical(n, 5, extra_h, seed + 500);
    const Compilation comp = compile_to_hc1q(u);

    // a valid hc1q circuit: one fixed qubit, classical gates only
    REQUIRE(comp.circuit.family == Family::Hc1q);
    REQUIRE_NOTHROW(comp.circuit.validate());
    REQUIRE(comp.circuit.width == comp.hadamards + n + 2);
    REQUIRE(comp.hadamards >= n);

    // every position is postselected, an output, or the flag
    std::set<int> covered;
    for (const auto& [pos, bit] : comp.postselect) covered.insert(pos);
    for (int p : comp.outputs) covered.insert(p);
    REQUIRE(covered.size() == static_cast<std::size_t>(comp.circuit.width));

    REQUIRE(fidelity(compiled_output_state(comp), simulate(u)) ==
            Catch::Approx(1.0).margin(1e-10));

    const StateVector full = simulate(comp.circuit);
    const double success = postselect(full, comp.postselect).probability;
    REQUIRE(std::abs(success - std::ldexp(1.0, -comp.circuit.width)) <= 1e-12);
    REQUIRE(postselection_probability(comp) ==
            Catch::Approx(std::ldexp(1.0, -comp.circuit.width)).margin(1e-18));
  }
}

TEST_CASE("compile rejects non-classical non-H gates") {
  REQUIRE_THROWS_AS(compile_to_hc1q(make_general(2, {Gate::ch(1, 2)})), std::invalid_argument);
  REQUIRE_THROWS_AS(compile_to_hc1q(make_general(1, {Gate::rz(0.3, 1)})), std::invalid_argument);
}

TEST_CASE("sidecar text lists pattern then outputs") {
  const Compilation comp = compile_to_hc1q(make_general(1, {}));
  // width 4: branch bit 1, sign wire 2, register 3, flag 4; output moved to 1
  REQUIRE(sidecar_text(comp) == "post 2 1\npost 3 0\npost 4 1\nout 1\n");
}
