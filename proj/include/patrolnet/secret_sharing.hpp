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

#ifndef PATROLNET_SECRET_SHARING_HPP
#define PATROLNET_SECRET_SHARING_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace patrolnet {

/// One fragment of a (threshold, count) split. `payload` has the message
/// length; byte i is the evaluation at `index` of the polynomial hiding
/// message byte i.
struct Share {
  std::uint8_t index = 0;
  std::uint8_t threshold = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Share&, const Share&) = default;
};

/// Splits `message` into `count` shares such that any `threshold` of them
/// recover it and fewer reveal nothing. Each byte gets its own random
/// polynomial of degree threshold - 1 over GF(256).
///
/// Throws ParameterError unless 1 <= threshold <= count <= 255 and the
/// message is non-empty.
std::vector<Share> split_secret(std::span<const std::uint8_t> message, int threshold, int count,
                                std::mt19937_64& rng);

/// Lagrange interpolation at zero over the first `threshold` shares by
/// index. Throws InsufficientShares below the threshold and MalformedShares
/// on duplicate or zero indices, mixed thresholds or unequal lengths.
std::vector<std::uint8_t> reconstruct_secret(std::span<const Share> shares);

/// Wire form: index, threshold, big-endian u16 payload length, payload.
std::vector<std::uint8_t> encode_share(const Share& share);

/// Inverse of encode_share. Throws MalformedShares on truncated input or a
/// length field that disagrees with the buffer.
Share decode_share(std::span<const std::uint8_t> bytes);

}  // namespace patrolnet

#endif  // PATROLNET_SECRET_SHARING_HPP
