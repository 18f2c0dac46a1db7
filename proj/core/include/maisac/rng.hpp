// Copyright 2026 The maisac Authors
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

#ifndef MAISAC_RNG_HPP_
#define MAISAC_RNG_HPP_

#include <cstdint>
#include <limits>

namespace maisac {

// SplitMix64: a counter-based 64-bit generator. Output i is a bijective mix of
// seed + i * golden, so independent substreams are derived by hashing
// (seed, stream) into a fresh seed. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0) : state_(seed) {}

  // Substream keyed by (seed, stream); independent of how many values other
  // substreams consumed.
  static CounterRng Substream(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(Mix(seed ^ Mix(stream + 0x632BE59BD9B4E019ULL)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return Mix(state_);
  }

  // Uniform double in [0, 1).
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

 private:
  static std::uint64_t Mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace maisac

#endif  // MAISAC_RNG_HPP_
