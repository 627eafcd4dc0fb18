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
#include "fh2/rng.hpp"

namespace fh2 {

/// 64 circuit evaluations in parallel, one word per wire: bit l of cols[p-1]
/// is wire p of lane l. Semantics are defined purely by the per-bitstring
/// truth tables; this is the packed representation behind the Monte-Carlo
/// estimators and the exact path sums.
struct LaneBlock {
  explicit LaneBlock(int width) : width(width), cols(static_cast<std::size_t>(width), 0) {}

  int width;
  std::vector<std::uint64_t> cols;

  std::uint64_t& col(int position) { return cols[static_cast<std::size_t>(position) - 1]; }
  std::uint64_t col(int position) const { return cols[static_cast<std::size_t>(position) - 1]; }

  BitString lane(int lane_index) const;
  void set_lane(int lane_index, const BitString& value);
};

/// Applies the classical gate list to all 64 lanes.
void apply_lanes(const std::vector<Gate>& gates, LaneBlock& block);
/// Applies the inverse (reversed gate list; all gates self-inverse).
void apply_lanes_inverse(const std::vector<Gate>& gates, LaneBlock& block);

/// Loads lane l with the value base|l on positions 1..bits (position 1 = most
/// significant); remaining positions are cleared. base must be 64-aligned.
void fill_counter(LaneBlock& block, int bits, std::uint64_t base);

/// Loads positions 1..bits with fresh stream words (one word per position, in
/// position order); remaining positions are cleared.
void fill_random(LaneBlock& block, int bits, Prng& rng);

/// Per-lane parity of the selected columns: bit l of the result is
/// XOR_{p : mask_p = 1} wire p of lane l. mask positions beyond block.width
/// are ignored.
std::uint64_t parity_word(const LaneBlock& block, const BitString& mask);

/// Per-lane match of positions first..last against `want` (want position 1
/// aligns with `first`): bit l set iff every selected wire of lane l equals
/// the wanted bit.
std::uint64_t match_word(const LaneBlock& block, int first, int last, const BitString& want);

/// Lane mask with the low `count` lanes set (count in [0, 64]; 64 -> all).
inline std::uint64_t lane_mask(std::int64_t count) {
  return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

}  // namespace fh2
