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

#include "fh2/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace fh2 {

BitString::BitString(int width) : width_(width) {
  if (width < 0) throw std::invalid_argument("BitString width must be non-negative");
  words_.assign((static_cast<std::size_t>(width) + 63) / 64, 0);
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(static_cast<int>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set_bit(static_cast<int>(i) + 1, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("bit string may contain only 0 and 1");
    }
  }
  return out;
}

BitString BitString::from_index(int width, std::uint64_t index) {
  if (width > 63) throw std::invalid_argument("from_index supports width <= 63");
  BitString out(width);
  for (int p = 1; p <= width; ++p) {
    out.set_bit(p, (index >> (width - p)) & 1);
  }
  return out;
}

bool BitString::bit(int position) const {
  if (position < 1 || position > width_) throw std::out_of_range("bit position out of range");
  const int i = position - 1;
  return (words_[i >> 6] >> (i & 63)) & 1;
}

void BitString::set_bit(int position, bool value) {
  if (position < 1 || position > width_) throw std::out_of_range("bit position out of range");
  const int i = position - 1;
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

std::uint64_t BitString::to_index() const {
  if (width_ > 63) throw std::invalid_argument("to_index supports width <= 63");
  std::uint64_t index = 0;
  for (int p = 1; p <= width_; ++p) {
    index = (index << 1) | static_cast<std::uint64_t>(bit(p));
  }
  return index;
}

std::string BitString::str() const {
  std::string s(static_cast<std::size_t>(width_), '0');
  for (int p = 1; p <= width_; ++p) {
    if (bit(p)) s[static_cast<std::size_t>(p) - 1] = '1';
  }
  return s;
}

BitString BitString::slice(int first, int last) const {
  if (first < 1 || last > width_ || first > last + 1) {
    throw std::out_of_range("slice range out of range");
  }
  BitString out(last - first + 1);
  for (int p = first; p <= last; ++p) out.set_bit(p - first + 1, bit(p));
  return out;
}

BitString BitString::concat(const BitString& tail) const {
  BitString out(width_ + tail.width_);
  for (int p = 1; p <= width_; ++p) out.set_bit(p, bit(p));
  for (int p = 1; p <= tail.width_; ++p) out.set_bit(width_ + p, tail.bit(p));
  return out;
}

bool BitString::dot(const BitString& mask) const {
  if (mask.width_ != width_) throw std::invalid_argument("dot requires equal widths");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & mask.words_[w];
  return std::popcount(acc) & 1;
}

bool BitString::operator<(const BitString& other) const {
  if (width_ != other.width_) return width_ < other.width_;
  for (int p = 1; p <= width_; ++p) {
    const bool a = bit(p), b = other.bit(p);
    if (a != b) return b;
  }
  return false;
}

}  // namespace fh2
