// Copyright 2026 The patrolnet Authors
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

#ifndef PATROLNET_GF256_HPP
#define PATROLNET_GF256_HPP

#include <cstdint>

namespace patrolnet::gf256 {

// Arithmetic in GF(2^8) reduced by x^8 + x^4 + x^3 + x + 1 (0x11b).
// Addition and subtraction are both XOR.

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }

std::uint8_t mul(std::uint8_t a, std::uint8_t b);

/// Multiplicative inverse; `a` must be non-zero.
std::uint8_t inv(std::uint8_t a);

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) { return mul(a, inv(b)); }

}  // namespace patrolnet::gf256

#endif  // PATROLNET_GF256_HPP
