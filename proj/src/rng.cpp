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

#include "fh2/rng.hpp"

#include <stdexcept>

namespace fh2 {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
       static_cast<std::uint32_t>(p1),
       static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
       static_cast<std::uint32_t>(p0)};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

std::uint64_t Prng::derive_stream(std::string_view label, std::uint64_t index) {
  return splitmix64(fnv1a64(label) + index * 0x9E3779B97F4A7C15ull);
}

Prng::Prng(std::uint64_t seed, std::string_view label, std::uint64_t index)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(derive_stream(label, index)) {}

std::uint64_t Prng::next_u64() {
  const std::uint64_t block = word_pos_ >> 1;
  if (block != cached_block_) {
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    cached_out_ = philox4x32(ctr, key_);
    cached_block_ = block;
  }
  const int half = static_cast<int>(word_pos_ & 1);
  ++word_pos_;
  return static_cast<std::uint64_t>(cached_out_[2 * half]) |
         (static_cast<std::uint64_t>(cached_out_[2 * half + 1]) << 32);
}

std::uint64_t Prng::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below requires n > 0");
  const std::uint64_t limit = n * (~std::uint64_t{0} / n);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % n;
}

BitString Prng::next_bits(int width) {
  BitString out(width);
  std::uint64_t word = 0;
  for (int p = 1; p <= width; ++p) {
    if (((p - 1) & 63) == 0) word = next_u64();
    out.set_bit(p, (word >> ((p - 1) & 63)) & 1);
  }
  return out;
}

}  // namespace fh2
