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

#include "fh2/bitslice.hpp"

#include <stdexcept>

namespace fh2 {

namespace {

// bit l of kLanePattern[b] is bit b of the lane index l
constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};

inline void apply_gate_lanes(const Gate& g, LaneBlock& b) {
  switch (g.kind) {
    case GateKind::X:
      b.col(g.qubits[0]) = ~b.col(g.qubits[0]);
      return;
    case GateKind::Cnot:
      b.col(g.qubits[1]) ^= b.col(g.qubits[0]);
      return;
    case GateKind::Toffoli:
      b.col(g.qubits[2]) ^= b.col(g.qubits[0]) & b.col(g.qubits[1]);
      return;
    case GateKind::Ncx: {
      std::uint64_t fire = ~std::uint64_t{0};
      for (std::size_t i = 0; i + 1 < g.qubits.size(); ++i) {
        const std::uint64_t c = b.col(g.qubits[i]);
        fire &= ((g.negative >> i) & 1) ? ~c : c;
      }
      b.col(g.qubits.back()) ^= fire;
      return;
    }
    default:
      throw std::invalid_argument("not a classical gate");
  }
}

}  // namespace

BitString LaneBlock::lane(int lane_index) const {
  BitString out(width);
  for (int p = 1; p <= width; ++p) out.set_bit(p, (col(p) >> lane_index) & 1);
  return out;
}

void LaneBlock::set_lane(int lane_index, const BitString& value) {
  const std::uint64_t bit = std::uint64_t{1} << lane_index;
  for (int p = 1; p <= width; ++p) {
    if (value.bit(p)) {
      col(p) |= bit;
    } else {
      col(p) &= ~bit;
    }
  }
}

void apply_lanes(const std::vector<Gate>& gates, LaneBlock& block) {
  for (const Gate& g : gates) apply_gate_lanes(g, block);
}

void apply_lanes_inverse(const std::vector<Gate>& gates, LaneBlock& block) {
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) apply_gate_lanes(*it, block);
}

void fill_counter(LaneBlock& block, int bits, std::uint64_t base) {
  for (int p = 1; p <= block.width; ++p) {
    if (p > bits) {
      block.col(p) = 0;
      continue;
    }
    const int b = bits - p;  // position 1 = most significant
    block.col(p) = b < 6 ? kLanePattern[b] : (((base >> b) & 1) ? ~std::uint64_t{0} : 0);
  }
}

void fill_random(LaneBlock& block, int bits, Prng& rng) {
  for (int p = 1; p <= block.width; ++p) block.col(p) = p <= bits ? rng.next_u64() : 0;
}

std::uint64_t parity_word(const LaneBlock& block, const BitString& mask) {
  std::uint64_t acc = 0;
  const int limit = std::min(block.width, mask.width());
  for (int p = 1; p <= limit; ++p) {
    if (mask.bit(p)) acc ^= block.col(p);
  }
  return acc;
}

std::uint64_t match_word(const LaneBlock& block, int first, int last, const BitString& want) {
  std::uint64_t acc = ~std::uint64_t{0};
  for (int p = first; p <= last; ++p) {
    const std::uint64_t c = block.col(p);
    acc &= want.bit(p - first + 1) ? c : ~c;
  }
  return acc;
}

}  // namespace fh2
