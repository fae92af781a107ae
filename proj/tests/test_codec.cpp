// Copyright 2026 The qgacs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgacs/codec.hpp"
#include "qgacs/error.hpp"
#include "support.hpp"

using namespace qgacs;
using qgacs::testing::Gen;
namespace oracle = qgacs::testing::oracle;

TEST_CASE("Elias gamma of k + 1") {
  CHECK(encode_nat(0).to_string() == "1");
  CHECK(encode_nat(3).to_string() == "00100");
  CHECK(nat_length(10) == 7);
  for (std::uint64_t k = 0; k < 5000; ++k) {
    CAPTURE(k);
    CHECK(encode_nat(k).to_string() == oracle::gamma(k));
    CHECK(nat_length(k) == oracle::gamma(k).size());
  }
  Gen g(31);
  for (int it = 0; it < 2000; ++it) {
    const std::uint64_t k = g.natural(std::uint64_t{1} << 61);
    CHECK(encode_nat(k).to_string() == oracle::gamma(k));
  }
}

TEST_CASE("zigzag") {
  CHECK(zigzag(0) == 0);
  CHECK(zigzag(-1) == 1);
  CHECK(zigzag(1) == 2);
  Gen g(32);
  for (int it = 0; it < 5000; ++it) {
    const std::int64_t z = g.integer(-(std::int64_t{1} << 60), std::int64_t{1} << 60);
    CHECK(zigzag(z) == oracle::zigzag(z));
    CHECK(unzigzag(zigzag(z)) == z);
  }
}

TEST_CASE("primitive lengths") {
  CHECK(rational_length(Rational(1)) == int_length(1) + nat_length(0));
  Gen g(33);
  for (int it = 0; it < 1000; ++it) {
    const Rational r = g.rational(500, 500);
    Code c;
    put_rational(c, r);
    CHECK(c.size() == rational_length(r));
    CHECK(rational_length(r) == int_length(r.num()) + nat_length(static_cast<std::uint64_t>(r.den() - 1)));
    BitReader rd(c);
    CHECK(get_rational(rd) == r);
    CHECK(rd.at_end());
    const GaussianRational z = g.gaussian(500, 500);
    Code cz;
    put_gaussian(cz, z);
    CHECK(cz.size() == gaussian_length(z));
    CHECK(gaussian_length(z) == rational_length(z.re) + rational_length(z.im));
  }
}

TEST_CASE("non-reduced rationals are rejected") {
  Code c;
  put_int(c, 2);
  put_nat(c, 3);  // denominator 4
  BitReader r(c);
  CHECK_THROWS_AS(get_rational(r), Error);
}

TEST_CASE("truncated codes are rejected") {
  const Code c = encode_nat(100);
  for (std::size_t len = 0; len < c.size(); ++len) {
    const Code t = Code::from_bits(c.to_string().substr(0, len));
    BitReader r(t);
    CHECK_THROWS_AS(get_nat(r), Error);
  }
}

TEST_CASE("hex form") {
  Gen g(34);
  for (int it = 0; it < 500; ++it) {
    std::string bits;
    const std::size_t len = g.natural(40);
    for (std::size_t k = 0; k < len; ++k) bits += g.coin() ? '1' : '0';
    const Code c = Code::from_bits(bits);
    CHECK(Code::from_hex(c.to_hex(), c.size()) == c);
  }
  CHECK(Code::from_bits("1").to_hex() == "8");
  CHECK(Code::from_bits("00100").to_hex() == "20");
  CHECK_THROWS_AS(Code::from_hex("zz", 8), Error);
  CHECK_THROWS_AS(Code::from_hex("8", 9), Error);
}

TEST_CASE("shortlex order") {
  CHECK(Code::from_bits("1") < Code::from_bits("00"));
  CHECK(Code::from_bits("01") < Code::from_bits("10"));
  CHECK(Code::from_bits("0").is_prefix_of(Code::from_bits("01")));
  CHECK_FALSE(Code::from_bits("1").is_prefix_of(Code::from_bits("01")));
}

namespace {

EncodableObject random_object(Gen& g, int depth) {
  switch (g.natural(depth > 0 ? 6 : 5)) {
    case 0: return {Natural{g.natural(100000)}};
    case 1: return {Integer{g.integer(-100000, 100000)}};
    case 2: return {g.rational()};
    case 3: return {g.gaussian()};
    case 4: return {g.sparse_vector(static_cast<unsigned>(g.natural(4)))};
    case 5: {
      ElementaryMatrix m;
      m.row_qubits = static_cast<unsigned>(g.natural(2));
      m.col_qubits = static_cast<unsigned>(g.natural(2));
      const std::uint64_t size = std::uint64_t{1} << (m.row_qubits + m.col_qubits);
      for (std::uint64_t k = 0; k < size; ++k)
        if (g.coin()) m.entries.push_back({k, {g.rational(9, 9), Rational(1)}});
      return {m};
    }
    default: return EncodableObject::pair(random_object(g, depth - 1), random_object(g, depth - 1));
  }
}

}  // namespace

TEST_CASE("object round trip") {
  Gen g(35);
  for (int it = 0; it < 3000; ++it) {
    const EncodableObject x = random_object(g, 3);
    const Code c = encode_object(x);
    CHECK(decode_object(c) == x);
    // The tagged form costs at most 4 bits per node over the payload.
    CHECK(c.size() >= encode_payload(x).size() + 2);
  }
}

TEST_CASE("pair length composes") {
  Gen g(36);
  for (int it = 0; it < 500; ++it) {
    const EncodableObject a = random_object(g, 1), b = random_object(g, 1);
    const auto p = EncodableObject::pair(a, b);
    CHECK(encode_payload(p).size() == encode_object(a).size() + encode_object(b).size());
    CHECK(encode_object(p).size() == encode_object(a).size() + encode_object(b).size() + 2);
  }
}

TEST_CASE("basis state length grows logarithmically in n") {
  std::size_t prev = 0;
  for (unsigned n = 1; n <= 16; ++n) {
    SparseVector v;
    v.qubits = n;
    v.entries.push_back({0, {Rational(1), Rational(0)}});
    const std::size_t len = encode_payload({v}).size();
    CHECK(len == nat_length(n) + nat_length(1) + nat_length(0) + gaussian_length({Rational(1), Rational(0)}));
    CHECK(len >= prev);
    prev = len;
  }
}

TEST_CASE("decoding rejects malformed objects") {
  // Sparse vector with an index past the dimension.
  Code c;
  c.push(false);
  c.push(true);
  put_nat(c, 1);
  put_nat(c, 1);
  put_nat(c, 5);
  put_gaussian(c, {Rational(1), Rational(0)});
  CHECK_THROWS_AS(decode_object(c), Error);
  // Trailing bits.
  Code d = encode_object({Natural{3}});
  d.push(true);
  CHECK_THROWS_AS(decode_object(d), Error);
}

TEST_CASE("state codes") {
  Gen g(37);
  SparseVector zero;
  zero.qubits = 2;
  zero.entries.push_back({0, {Rational(1), Rational(0)}});
  CHECK(state_code_length(zero) == 10);
  for (std::uint64_t i = 0; i < 8; ++i) {
    SparseVector e;
    e.qubits = 3;
    e.entries.push_back({i, {Rational(1), Rational(0)}});
    CHECK(state_code_length(e) == 9 + nat_length(i));
  }
  for (int it = 0; it < 1000; ++it) {
    const SparseVector v = g.sparse_vector(3);
    const Code c = encode_state(v);
    CHECK(c.size() == state_code_length(v));
    BitReader r(c);
    const auto back = decode_state(r, 3);
    std::vector<GaussianRational> vals;
    for (const auto& e : v.entries) vals.push_back(e.second);
    if (exact_norm_squared(vals) <= 1) {
      REQUIRE(back.has_value());
      CHECK(*back == v);
      CHECK(r.at_end());
    } else {
      CHECK_FALSE(back.has_value());
    }
  }
}

TEST_CASE("index pair codes") {
  CHECK(encode_index_pair(2, 2).to_string() == "0" + oracle::gamma(2));
  CHECK(encode_index_pair(1, 3).to_string() == "1" + oracle::gamma(1) + oracle::gamma(3));
  std::vector<std::string> words;
  std::vector<Code> codes;
  for (std::uint64_t i = 0; i < 12; ++i)
    for (std::uint64_t j = 0; j < 12; ++j) {
      const Code c = encode_index_pair(i, j);
      CHECK(c.size() == index_pair_length(i, j));
      words.push_back(c.to_string());
      codes.push_back(c);
    }
  CHECK(oracle::prefix_free(words));
  CHECK(kraft_check(codes) <= 1.0);
}

TEST_CASE("Kraft sums") {
  std::vector<Code> one = {Code::from_bits("1")};
  CHECK(kraft_check(one) == 0.5);
  std::vector<Code> full = {Code::from_bits("0"), Code::from_bits("10"), Code::from_bits("11")};
  CHECK(kraft_check(full) == 1.0);
  std::vector<Code> clash = {Code::from_bits("0"), Code::from_bits("01")};
  CHECK_THROWS_AS(kraft_check(clash), Error);

  std::vector<Code> nats;
  for (std::uint64_t k = 0;; ++k) {
    if (nat_length(k) > 9) break;
    nats.push_back(encode_nat(k));
  }
  CHECK(kraft_check(nats) <= 1.0);
  CHECK(std::abs(kraft_check(nats) - oracle::kraft(nats).get_d()) < 1e-15);
}

TEST_CASE("nat codes are prefix free, exhaustively to length 16") {
  std::vector<std::string> words;
  for (std::uint64_t k = 0; nat_length(k) <= 16; ++k) words.push_back(encode_nat(k).to_string());
  // Every bit string of length <= 16 parses as at most one codeword.
  for (unsigned len = 1; len <= 16; ++len) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
      std::string bits(len, '0');
      for (unsigned b = 0; b < len; ++b)
        if ((w >> (len - 1 - b)) & 1) bits[b] = '1';
      int prefixes = 0;
      for (const auto& word : words)
        if (word.size() <= len && bits.compare(0, word.size(), word) == 0) ++prefixes;
      REQUIRE(prefixes <= 1);
    }
  }
}
