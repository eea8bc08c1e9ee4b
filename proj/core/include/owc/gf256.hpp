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

#ifndef OWC_GF256_HPP
#define OWC_GF256_HPP

#include <array>
#include <cstdint>
#include <stdexcept>

// Arithmetic in GF(2^8) with primitive polynomial x^8 + x^4 + x^3 + x^2 + 1
// (0x11d). 0x02 is a primitive element, so exp/log tables over its powers
// cover the whole multiplicative group. Tables are built at compile time and
// immutable afterwards; every operation is pure.

namespace owc::gf256 {

using FieldElement = std::uint8_t;

inline constexpr std::uint16_t kPrimitivePoly = 0x11d;
inline constexpr FieldElement kGenerator = 0x02;

namespace detail {

struct Tables {
  // exp table doubled so mul can index log[a] + log[b] without a mod 255
  std::array<std::uint8_t, 510> exp{};
  std::array<std::uint8_t, 256> log{};  // log[0] is unused
};

constexpr Tables build_tables() {
  Tables t{};
  std::uint16_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.log[x] = static_cast<std::uint8_t>(i);
    x <<= 1;
    if (x & 0x100) {
      x ^= kPrimitivePoly;
    }
  }
  for (int i = 255; i < 510; ++i) {
    t.exp[i] = t.exp[i - 255];
  }
  return t;
}

inline constexpr Tables tables = build_tables();

}  // namespace detail

constexpr FieldElement add(FieldElement a, FieldElement b) {
  return a ^ b;  // characteristic 2: addition and subtraction are XOR
}

constexpr FieldElement mul(FieldElement a, FieldElement b) {
  if (a == 0 || b == 0) {
    return 0;  // log of 0 is undefined, handle before the table lookup
  }
  return detail::tables.exp[detail::tables.log[a] + detail::tables.log[b]];
}

constexpr FieldElement inv(FieldElement a) {
  if (a == 0) {
    throw std::domain_error("gf256: zero has no multiplicative inverse");
  }
  return detail::tables.exp[255 - detail::tables.log[a]];
}

constexpr FieldElement div(FieldElement a, FieldElement b) {
  if (b == 0) {
    throw std::domain_error("gf256: division by zero");
  }
  if (a == 0) {
    return 0;
  }
  return detail::tables.exp[255 + detail::tables.log[a] - detail::tables.log[b]];
}

// g^i for i in [0, 255); powers of the generator enumerate all nonzero elements.
constexpr FieldElement generator_power(int i) { return detail::tables.exp[i % 255]; }

}  // namespace owc::gf256

#endif  // OWC_GF256_HPP
