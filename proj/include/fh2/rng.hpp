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

#include <array>
#include <cstdint>
#include <string_view>

#include "fh2/bitstring.hpp"

namespace fh2 {

/// Identifier of the generator family, embedded in CLI output metadata.
inline constexpr const char* kGeneratorId = "philox4x32-10";

/// One round block of Philox4x32 with 10 rounds (Salmon et al., SC'11
/// reference constants). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based pseudorandom stream addressed by (seed, label, index).
///
/// The Philox key is the 64-bit seed. The 128-bit counter is split into a
/// 64-bit stream id in the high half and a 64-bit word position in the low
/// half; the stream id is derived from FNV-1a of the label, mixed with the
/// index (SplitMix64 finalizer). Every (label, index) pair therefore yields
/// an independent substream of the same seed, and any word position can be
/// addressed in O(1), which is what makes chunked parallel consumption
/// deterministic.
class Prng {
 public:
  Prng(std::uint64_t seed, std::string_view label, std::uint64_t index = 0);

  std::uint64_t next_u64();
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64()); }
  /// Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  bool next_bool() { return next_u64() & 1; }
  /// Uniform in [0, n), unbiased (rejection sampling).
  std::uint64_t next_below(std::uint64_t n);
  /// Uniform bit string of the given width.
  BitString next_bits(int width);

  /// Absolute position in the word stream; `seek_word` jumps there.
  std::uint64_t word_position() const { return word_pos_; }
  void seek_word(std::uint64_t word_index) { word_pos_ = word_index; }

  std::uint64_t stream_id() const { return stream_; }

  static std::uint64_t derive_stream(std::string_view label, std::uint64_t index);

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t word_pos_ = 0;
  std::uint64_t cached_block_ = ~std::uint64_t{0};
  std::array<std::uint32_t, 4> cached_out_{};
};

}  // namespace fh2
