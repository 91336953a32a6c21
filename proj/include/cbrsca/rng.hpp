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

#ifndef CBRSCA_RNG_HPP_
#define CBRSCA_RNG_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>

namespace cbrsca {

// splitmix64 finalizer; used to derive independent per-stream seeds from a
// single master seed so that adding streams never perturbs existing ones.
inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t DeriveSeed(uint64_t master, uint64_t stream, uint64_t index) {
  return SplitMix64(SplitMix64(master ^ 0x243f6a8885a308d3ull) + stream * 0x100000001b3ull + index);
}

// mt19937_64 with hand-rolled uniform helpers. std::uniform_*_distribution
// is not portable across standard libraries, so we avoid it: results must be
// bit-reproducible for a fixed seed everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t NextU64() { return gen_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("Rng::Uniform: lo > hi");
    return lo + (hi - lo) * Uniform();
  }

  // Uniform integer in [lo, hi], inclusive, via unbiased rejection.
  int64_t UniformInt(int64_t lo, int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::UniformInt: lo > hi");
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<int64_t>(gen_());  // full 64-bit range
    uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return lo + static_cast<int64_t>(draw % span);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cbrsca

#endif  // CBRSCA_RNG_HPP_
