// Copyright 2026 The gnp_lab Authors
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
#include <limits>

namespace gnp_lab {

/// SplitMix64 finalizer. Used for seed derivation only.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// A deterministic random stream identified by (master_seed, stream_index).
///
/// The generator is xoshiro256** keyed from the pair through SplitMix64, so
/// the output at any position is a pure function of (seed, index, position).
/// Streams are cheap values; each replica owns its own.
///
/// Satisfies std::uniform_random_bit_generator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index) noexcept
      : master_seed_(master_seed), stream_index_(stream_index) {
    std::uint64_t key = master_seed;
    std::uint64_t mixed = splitmix64(key);
    std::uint64_t index_key = stream_index ^ 0xD1B54A32D192ED03ULL;
    mixed ^= splitmix64(index_key);
    mixed = (mixed << 17 | mixed >> 47) ^ stream_index;
    for (auto& word : state_) word = splitmix64(mixed);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next(); }

  result_type next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t shifted = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= shifted;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_positive() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_[4]{};
};

inline RngStream derive_stream(std::uint64_t master_seed,
                               std::uint64_t index) noexcept {
  return RngStream(master_seed, index);
}

}  // namespace gnp_lab
