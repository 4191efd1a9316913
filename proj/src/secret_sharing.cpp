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

#include "patrolnet/secret_sharing.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>

#include "patrolnet/errors.hpp"
#include "patrolnet/gf256.hpp"

namespace patrolnet {

std::vector<Share> split_secret(std::span<const std::uint8_t> message, int threshold, int count,
                                std::mt19937_64& rng) {
  if (threshold < 1 || threshold > count || count > 255) {
    throw ParameterError(
        fmt::format("need 1 <= threshold <= count <= 255, got ({}, {})", threshold, count));
  }
  if (message.empty()) throw ParameterError("cannot split an empty message");
  if (message.size() > 0xffff) throw ParameterError("message longer than 65535 bytes");

  std::vector<Share> shares(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    shares[i].index = static_cast<std::uint8_t>(i + 1);
    shares[i].threshold = static_cast<std::uint8_t>(threshold);
    shares[i].payload.resize(message.size());
  }

  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::uint8_t> coeff(static_cast<std::size_t>(threshold));
  for (std::size_t b = 0; b < message.size(); ++b) {
    coeff[0] = message[b];
    for (int c = 1; c < threshold; ++c) coeff[c] = static_cast<std::uint8_t>(byte(rng));
    for (auto& share : shares) {
      // Horner evaluation at x = share.index.
      std::uint8_t acc = 0;
      for (int c = threshold - 1; c >= 0; --c) {
        acc = gf256::add(gf256::mul(acc, share.index), coeff[c]);
      }
      share.payload[b] = acc;
    }
  }
  return shares;
}

std::vector<std::uint8_t> reconstruct_secret(std::span<const Share> shares) {
  if (shares.empty()) throw InsufficientShares("no shares supplied");
  const std::uint8_t threshold = shares.front().threshold;
  const std::size_t length = shares.front().payload.size();

  std::array<bool, 256> used{};
  for (const auto& s : shares) {
    if (s.index == 0) throw MalformedShares("share index 0 is reserved");
    if (s.threshold != threshold) throw MalformedShares("shares disagree on the threshold");
    if (s.payload.size() != length) throw MalformedShares("shares disagree on payload length");
    if (used[s.index]) throw MalformedShares(fmt::format("duplicate share index {}", s.index));
    used[s.index] = true;
  }
  if (threshold == 0) throw MalformedShares("threshold 0");
  if (shares.size() < threshold) {
    throw InsufficientShares(
        fmt::format("{} shares supplied, threshold is {}", shares.size(), threshold));
  }

  std::vector<const Share*> chosen;
  for (const auto& s : shares) chosen.push_back(&s);
  std::sort(chosen.begin(), chosen.end(),
            [](const Share* a, const Share* b) { return a->index < b->index; });
  chosen.resize(threshold);

  // Lagrange basis at zero: l_j(0) = prod_{m != j} x_m / (x_m - x_j).
  std::vector<std::uint8_t> basis(threshold);
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    std::uint8_t num = 1;
    std::uint8_t den = 1;
    for (std::size_t m = 0; m < chosen.size(); ++m) {
      if (m == j) continue;
      num = gf256::mul(num, chosen[m]->index);
      den = gf256::mul(den, gf256::add(chosen[m]->index, chosen[j]->index));
    }
    basis[j] = gf256::div(num, den);
  }

  std::vector<std::uint8_t> message(length, 0);
  for (std::size_t b = 0; b < length; ++b) {
    std::uint8_t acc = 0;
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      acc = gf256::add(acc, gf256::mul(basis[j], chosen[j]->payload[b]));
    }
    message[b] = acc;
  }
  return message;
}

std::vector<std::uint8_t> encode_share(const Share& share) {
  if (share.payload.size() > 0xffff) throw ParameterError("share payload too long");
  std::vector<std::uint8_t> out;
  out.reserve(4 + share.payload.size());
  out.push_back(share.index);
  out.push_back(share.threshold);
  out.push_back(static_cast<std::uint8_t>(share.payload.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(share.payload.size() & 0xff));
  out.insert(out.end(), share.payload.begin(), share.payload.end());
  return out;
}

Share decode_share(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw MalformedShares("share header truncated");
  const std::size_t length = (std::size_t{bytes[2]} << 8) | bytes[3];
  if (bytes.size() != 4 + length) {
    throw MalformedShares(
        fmt::format("length field says {} bytes, buffer holds {}", length, bytes.size() - 4));
  }
  Share share;
  share.index = bytes[0];
  share.threshold = bytes[1];
  share.payload.assign(bytes.begin() + 4, bytes.end());
  return share;
}

}  // namespace patrolnet
