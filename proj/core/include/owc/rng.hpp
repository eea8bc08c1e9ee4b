// Copyright 2026 The owcsim Authors
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

#ifndef OWC_RNG_HPP
#define OWC_RNG_HPP

#include <cstdint>
#include <random>

namespace owc::sim {

// splitmix64 finalizer; good 64-bit avalanche for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

enum class StreamTag : std::uint64_t {
  ber_trial = 0xbe52,
  rate_trial = 0x2a7e,
  sic_calibration = 0xca1b,
};

// Deterministic, collision-resistant substream: trial i's randomness is a
// function of (seed, index, tag) only, independent of scheduling order.
inline std::mt19937_64 substream(std::uint64_t master_seed, std::uint64_t index, StreamTag tag) {
  const std::uint64_t s =
      mix64(mix64(mix64(master_seed) ^ static_cast<std::uint64_t>(tag)) ^ index);
  return std::mt19937_64(s);
}

}  // namespace owc::sim

#endif  // OWC_RNG_HPP
