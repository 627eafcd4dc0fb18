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
#include <string>
#include <string_view>
#include <vector>

namespace fh2 {

/// Fixed-width ordered bit sequence. Position 1 is the leftmost bit in
/// string rendering, file formats, and index encoding (position 1 = most
/// significant bit of `to_index`).
class BitString {
 public:
  BitString() = default;
  explicit BitString(int width);

  static BitString from_string(std::string_view bits);
  /// Interprets `index` with position 1 as the most significant bit.
  static BitString from_index(int width, std::uint64_t index);
  static BitString zeros(int width) { return BitString(width); }

  int width() const { return width_; }
  bool bit(int position) const;             // 1-based
  void set_bit(int position, bool value);   // 1-based

  std::uint64_t to_index() const;           // requires width <= 63
  std::string str() const;

  /// Bits at positions first..last inclusive as a new string.
  BitString slice(int first, int last) const;
  /// This string followed by `tail`.
  BitString concat(const BitString& tail) const;

  /// Parity of the bitwise AND with `mask` (dot product mod 2).
  bool dot(const BitString& mask) const;

  bool operator==(const BitString& other) const {
    return width_ == other.width_ && words_ == other.words_;
  }
  bool operator!=(const BitString& other) const { return !(*this == other); }
  /// Dictionary order on equal widths; shorter strings sort first.
  bool operator<(const BitString& other) const;

 private:
  int width_ = 0;
  std::vector<std::uint64_t> words_;  // position p -> words_[(p-1)/64] bit (p-1)%64
};

}  // namespace fh2
