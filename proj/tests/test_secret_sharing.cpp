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


#include <algorithm>
#include <array>

#include "doctest.h"
#include "oracles.hpp"
#include "patrolnet/errors.hpp"
#include "patrolnet/gf256.hpp"
#include "patrolnet/secret_sharing.hpp"

using namespace patrolnet;

namespace {

std::vector<std::uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("gf256 multiplication matches shift-and-add over all pairs") {
  for (int a = 0; a < 256; ++a)
    for (int b = 0; b < 256; ++b)
      REQUIRE(gf256::mul(std::uint8_t(a), std::uint8_t(b)) ==
              oracle::gf_mul(std::uint8_t(a), std::uint8_t(b)));
}

TEST_CASE("gf256 inverses") {
  for (int a = 1; a < 256; ++a) {
    const auto inv = gf256::inv(std::uint8_t(a));
    CHECK(oracle::gf_mul(std::uint8_t(a), inv) == 1);
    CHECK(gf256::div(std::uint8_t(a), std::uint8_t(a)) == 1);
  }
  CHECK(gf256::add(0x53, 0xca) == 0x99);
  CHECK(gf256::mul(0x53, 0xca) == 0x01);
}

TEST_CASE("every t-subset reconstructs; t-1 shares do not") {
  std::mt19937_64 rng(5);
  const auto msg = bytes("report 17 from node 4 at tick 33");
  const auto shares = split_secret(msg, 3, 4, rng);
  REQUIRE(shares.size() == 4);
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::vector<Share> subset;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) subset.push_back(shares[i]);
    CHECK(reconstruct_secret(subset) == msg);
    std::reverse(subset.begin(), subset.end());
    CHECK(reconstruct_secret(subset) == msg);
  }
  CHECK_THROWS_AS(reconstruct_secret(std::span(shares).first(2)), InsufficientShares);
  CHECK_THROWS_AS(reconstruct_secret(std::span<const Share>{}), InsufficientShares);
}

TEST_CASE("shares lie on a polynomial of degree t-1 through the message") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<std::uint8_t> msg{std::uint8_t(trial)};
    const auto shares = split_secret(msg, 2, 5, rng);
    // slope from share 1, then every other share must agree
    const std::uint8_t s = msg[0];
    const auto& first = shares[0];
    std::uint8_t slope = 0;
    for (int a = 0; a < 256; ++a) {
      const std::array<std::uint8_t, 2> c{s, std::uint8_t(a)};
      if (oracle::gf_poly(c, first.index) == first.payload[0]) slope = std::uint8_t(a);
    }
    const std::array<std::uint8_t, 2> c{s, slope};
    for (const auto& sh : shares) CHECK(oracle::gf_poly(c, sh.index) == sh.payload[0]);
  }
}

TEST_CASE("a single share of a 2-of-3 split is consistent with every message exactly once") {
  for (std::uint8_t x = 1; x <= 3; ++x) {
    for (int y = 0; y < 256; ++y) {
      std::array<int, 256> count{};
      for (int s = 0; s < 256; ++s)
        for (int a = 0; a < 256; ++a) {
          const std::array<std::uint8_t, 2> c{std::uint8_t(s), std::uint8_t(a)};
          if (oracle::gf_poly(c, x) == y) ++count[s];
        }
      REQUIRE(std::all_of(count.begin(), count.end(), [](int n) { return n == 1; }));
    }
  }
}

TEST_CASE("malformed share pools are rejected") {
  std::mt19937_64 rng(2);
  const auto msg = bytes("abc");
  auto shares = split_secret(msg, 2, 3, rng);

  auto dup = std::vector<Share>{shares[0], shares[0]};
  CHECK_THROWS_AS(reconstruct_secret(dup), MalformedShares);

  auto zero = std::vector<Share>{shares[0], shares[1]};
  zero[1].index = 0;
  CHECK_THROWS_AS(reconstruct_secret(zero), MalformedShares);

  auto length = std::vector<Share>{shares[0], shares[1]};
  length[1].payload.pop_back();
  CHECK_THROWS_AS(reconstruct_secret(length), MalformedShares);

  auto threshold = std::vector<Share>{shares[0], shares[1]};
  threshold[1].threshold = 3;
  CHECK_THROWS_AS(reconstruct_secret(threshold), MalformedShares);
}

TEST_CASE("split parameter bounds") {
  std::mt19937_64 rng(0);
  const auto msg = bytes("x");
  CHECK_THROWS_AS(split_secret(msg, 0, 3, rng), ParameterError);
  CHECK_THROWS_AS(split_secret(msg, 4, 3, rng), ParameterError);
  CHECK_THROWS_AS(split_secret(msg, 2, 256, rng), ParameterError);
  CHECK_THROWS_AS(split_secret({}, 2, 3, rng), ParameterError);
  const auto one = split_secret(msg, 1, 1, rng);
  CHECK(one[0].payload == msg);
  CHECK(split_secret(msg, 255, 255, rng).size() == 255);
}

TEST_CASE("share encoding round-trips and rejects bad lengths") {
  std::mt19937_64 rng(3);
  for (const auto& sh : split_secret(bytes("payload bytes"), 2, 3, rng)) {
    const auto wire = encode_share(sh);
    CHECK(wire.size() == 4 + sh.payload.size());
    CHECK(decode_share(wire) == sh);
  }
  const std::vector<std::uint8_t> truncated{1, 2, 0};
  CHECK_THROWS_AS(decode_share(truncated), MalformedShares);
  const std::vector<std::uint8_t> short_payload{1, 2, 0, 5, 'a'};
  CHECK_THROWS_AS(decode_share(short_payload), MalformedShares);
}
