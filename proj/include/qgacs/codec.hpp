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

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgacs/rational.hpp"

namespace qgacs {

/// A finite bit string. Bits are stored one per byte.
class Code {
 public:
  Code() = default;
  /// From a string of '0' and '1'.
  static Code from_bits(const std::string& bits);
  /// Inverse of to_hex(); `length` disambiguates the padding of the last
  /// hex digit.
  static Code from_hex(const std::string& hex, std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  bool bit(std::size_t i) const { return bits_[i] != 0; }
  void push(bool b) { bits_.push_back(b ? 1 : 0); }
  void append(const Code& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }

  bool is_prefix_of(const Code& other) const;
  std::string to_string() const;
  /// Big-endian hex, zero-padded to a multiple of four bits.
  std::string to_hex() const;

  friend bool operator==(const Code&, const Code&) = default;
  /// Shortlex: length first, then lexicographic.
  friend std::strong_ordering operator<=>(const Code& a, const Code& b);

 private:
  std::vector<std::uint8_t> bits_;
};

class BitReader {
 public:
  explicit BitReader(const Code& code) : code_(code) {}
  bool at_end() const noexcept { return pos_ == code_.size(); }
  std::size_t position() const noexcept { return pos_; }
  /// Throws ErrorCode::codec past the end.
  bool read();

 private:
  const Code& code_;
  std::size_t pos_ = 0;
};

// Code lengths, closed form.
std::size_t nat_length(std::uint64_t k);
std::size_t int_length(std::int64_t z);
std::size_t rational_length(const Rational& r);
std::size_t gaussian_length(const GaussianRational& z);

std::uint64_t zigzag(std::int64_t z);
std::int64_t unzigzag(std::uint64_t u);

// Primitive writers/readers. Readers throw ErrorCode::codec on malformed or
// non-canonical input.
void put_nat(Code& c, std::uint64_t k);
void put_int(Code& c, std::int64_t z);
void put_rational(Code& c, const Rational& r);
void put_gaussian(Code& c, const GaussianRational& z);
std::uint64_t get_nat(BitReader& r);
std::int64_t get_int(BitReader& r);
Rational get_rational(BitReader& r);
GaussianRational get_gaussian(BitReader& r);

Code encode_nat(std::uint64_t k);

/// Sparse complex vector over n qubits: strictly increasing indices below
/// 2^n, no zero entries.
struct SparseVector {
  unsigned qubits = 0;
  std::vector<std::pair<std::uint64_t, GaussianRational>> entries;

  std::size_t dim() const { return std::size_t{1} << qubits; }
  std::vector<Complex> dense() const;
  std::vector<GaussianRational> dense_exact() const;
  /// Throws ErrorCode::codec when not canonical.
  void validate() const;
  static SparseVector from_dense(const std::vector<GaussianRational>& v);
  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

/// Elementary matrix with Gaussian-rational entries, stored sparse by
/// row-major linear index.
struct ElementaryMatrix {
  unsigned row_qubits = 0;
  unsigned col_qubits = 0;
  std::vector<std::pair<std::uint64_t, GaussianRational>> entries;

  static ElementaryMatrix from_rational(const RationalMatrix& m);
  RationalMatrix to_rational() const;
  void validate() const;
  friend bool operator==(const ElementaryMatrix&, const ElementaryMatrix&) = default;
};

struct Natural {
  std::uint64_t value = 0;
  friend bool operator==(const Natural&, const Natural&) = default;
};
struct Integer {
  std::int64_t value = 0;
  friend bool operator==(const Integer&, const Integer&) = default;
};

struct EncodableObject;
struct Pair {
  std::shared_ptr<const EncodableObject> first;
  std::shared_ptr<const EncodableObject> second;
};

struct EncodableObject {
  std::variant<Natural, Integer, Rational, GaussianRational, SparseVector, ElementaryMatrix, Pair>
      value;

  static EncodableObject pair(EncodableObject a, EncodableObject b);
};

bool operator==(const EncodableObject& a, const EncodableObject& b);

/// Untagged payload code; its length is the surrogate complexity K.
Code encode_payload(const EncodableObject& x);
/// Payload preceded by the 2-bit class tags of each union node.
Code encode_object(const EncodableObject& x);
EncodableObject decode_object(BitReader& r);
EncodableObject decode_object(const Code& c);

/// Code of an elementary state with the qubit count supplied as context:
/// nat(count), then (index gap, value) pairs.
Code encode_state(const SparseVector& v);
std::size_t state_code_length(const SparseVector& v);
/// Returns nullopt for bit strings that are not the code of a canonical
/// state over `qubits` qubits with squared norm in (0, 1]. `r` is left just
/// past the consumed bits on success.
std::optional<SparseVector> decode_state(BitReader& r, unsigned qubits);

/// Code of an ordered pair of outcome indices: "0" nat(i) when i == j,
/// otherwise "1" nat(i) nat(j).
Code encode_index_pair(std::uint64_t i, std::uint64_t j);
std::size_t index_pair_length(std::uint64_t i, std::uint64_t j);

/// Sum of 2^-len over a prefix-free list. Throws ErrorCode::codec naming the
/// first colliding pair.
double kraft_check(std::span<const Code> codes);

}  // namespace qgacs
