// Copyright 2026 The Authors.
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

#ifndef CBRSCA_CHANNELS_HPP_
#define CBRSCA_CHANNELS_HPP_

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cbrsca {

// The 3.5 GHz band is divided into 15 channels of 10 MHz each. Channels are
// 1-based. Priority-access assignments draw from the first 10 channels and
// may aggregate at most 4 contiguous channels.
inline constexpr int kPaChannelCount = 10;
inline constexpr int kGaaChannelCount = 15;
inline constexpr int kMaxBlockLen = 4;
inline constexpr int kMaxPalsPerTract = 7;

// A set of channels, stored as a bitmask over channel indices 1..31.
class ChannelSet {
 public:
  ChannelSet() = default;

  static ChannelSet All(int n_channels) {
    if (n_channels < 0 || n_channels > 31)
      throw std::invalid_argument("ChannelSet::All: n_channels out of range");
    ChannelSet s;
    for (int c = 1; c <= n_channels; ++c) s.Insert(c);
    return s;
  }

  static ChannelSet Of(std::initializer_list<int> chans) {
    ChannelSet s;
    for (int c : chans) s.Insert(c);
    return s;
  }

  void Insert(int c) {
    if (c < 1 || c > 31)
      throw std::invalid_argument("ChannelSet: channel out of range");
    bits_ |= 1u << c;
  }
  void Erase(int c) {
    if (c >= 1 && c <= 31) bits_ &= ~(1u << c);
  }
  bool Contains(int c) const {
    return c >= 1 && c <= 31 && ((bits_ >> c) & 1u);
  }
  int Count() const { return __builtin_popcount(bits_); }
  bool Empty() const { return bits_ == 0; }

  ChannelSet Intersect(const ChannelSet& o) const {
    ChannelSet s;
    s.bits_ = bits_ & o.bits_;
    return s;
  }
  ChannelSet Union(const ChannelSet& o) const {
    ChannelSet s;
    s.bits_ = bits_ | o.bits_;
    return s;
  }
  ChannelSet Minus(const ChannelSet& o) const {
    ChannelSet s;
    s.bits_ = bits_ & ~o.bits_;
    return s;
  }
  bool ContainsAll(const ChannelSet& o) const {
    return (o.bits_ & ~bits_) == 0;
  }

  std::vector<int> Channels() const {
    std::vector<int> out;
    for (int c = 1; c <= 31; ++c)
      if (Contains(c)) out.push_back(c);
    return out;
  }

  uint32_t bits() const { return bits_; }
  friend bool operator==(const ChannelSet& a, const ChannelSet& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const ChannelSet& a, const ChannelSet& b) {
    return a.bits_ != b.bits_;
  }

 private:
  uint32_t bits_ = 0;
};

// A contiguous block of channels [lo, lo+len). len == 0 means "no block".
struct ChannelBlock {
  int lo = 0;
  int len = 0;

  int hi() const { return lo + len - 1; }
  bool Contains(int c) const { return c >= lo && c <= hi(); }
  bool Overlaps(const ChannelBlock& o) const { return Overlap(o) > 0; }
  int Overlap(const ChannelBlock& o) const {
    if (len == 0 || o.len == 0) return 0;
    int l = lo > o.lo ? lo : o.lo;
    int h = hi() < o.hi() ? hi() : o.hi();
    return h >= l ? h - l + 1 : 0;
  }
  ChannelSet AsSet() const {
    ChannelSet s;
    for (int c = lo; c <= hi(); ++c) s.Insert(c);
    return s;
  }

  friend bool operator==(const ChannelBlock& a, const ChannelBlock& b) {
    return a.lo == b.lo && a.len == b.len;
  }
  friend bool operator!=(const ChannelBlock& a, const ChannelBlock& b) {
    return !(a == b);
  }
  // Canonical order: shorter blocks first, then lower start channel.
  friend bool operator<(const ChannelBlock& a, const ChannelBlock& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.lo < b.lo;
  }
};

}  // namespace cbrsca

#endif  // CBRSCA_CHANNELS_HPP_
