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

#include "qgacs/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qgacs/error.hpp"

namespace qgacs {

Code Code::from_bits(const std::string& bits) {
  Code c;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') fail(ErrorCode::codec, "bit string contains '" + std::string(1, ch) + "'");
    c.push(ch == '1');
  }
  return c;
}

Code Code::from_hex(const std::string& hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) {
    fail(ErrorCode::codec, "hex string of " + std::to_string(hex.size()) +
                               " digits cannot hold " + std::to_string(length) + " bits");
  }
  Code c;
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char ch = hex[k];
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else fail(ErrorCode::codec, "bad hex digit");
    for (int b = 3; b >= 0; --b) {
      const bool bit = (v >> b) & 1;
      if (c.size() < length) c.push(bit);
      else if (bit) fail(ErrorCode::codec, "nonzero padding bits in hex code");
    }
  }
  return c;
}

bool Code::is_prefix_of(const Code& other) const {
  return bits_.size() <= other.bits_.size() &&
         std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

std::string Code::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

std::string Code::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (std::size_t i = 0; i < bits_.size(); i += 4) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      v <<= 1;
      if (i + b < bits_.size()) v |= bits_[i + b];
    }
    s.push_back(digits[v]);
  }
  return s;
}

std::strong_ordering operator<=>(const Code& a, const Code& b) {
  if (auto c = a.bits_.size() <=> b.bits_.size(); c != 0) return c;
  return a.bits_ <=> b.bits_;
}

bool BitReader::read() {
  if (pos_ >= code_.size()) fail(ErrorCode::codec, "unexpected end of code");
  return code_.bit(pos_++);
}

std::size_t nat_length(std::uint64_t k) {
  if (k == UINT64_MAX) return 129;
  return 2 * static_cast<std::size_t>(std::bit_width(k + 1) - 1) + 1;
}

std::uint64_t zigzag(std::int64_t z) {
  return z >= 0 ? static_cast<std::uint64_t>(z) << 1
                : (static_cast<std::uint64_t>(-(z + 1)) << 1) | 1;
}

std::int64_t unzigzag(std::uint64_t u) {
  return (u & 1) ? -static_cast<std::int64_t>(u >> 1) - 1 : static_cast<std::int64_t>(u >> 1);
}

std::size_t int_length(std::int64_t z) { return nat_length(zigzag(z)); }

std::size_t rational_length(const Rational& r) {
  return int_length(r.num()) + nat_length(static_cast<std::uint64_t>(r.den() - 1));
}

std::size_t gaussian_length(const GaussianRational& z) {
  return rational_length(z.re) + rational_length(z.im);
}

void put_nat(Code& c, std::uint64_t k) {
  if (k == UINT64_MAX) fail(ErrorCode::codec, "natural too large to encode");
  const std::uint64_t x = k + 1;
  const int width = std::bit_width(x);
  for (int i = 0; i < width - 1; ++i) c.push(false);
  for (int i = width - 1; i >= 0; --i) c.push((x >> i) & 1);
}

void put_int(Code& c, std::int64_t z) { put_nat(c, zigzag(z)); }

void put_rational(Code& c, const Rational& r) {
  put_int(c, r.num());
  put_nat(c, static_cast<std::uint64_t>(r.den() - 1));
}

void put_gaussian(Code& c, const GaussianRational& z) {
  put_rational(c, z.re);
  put_rational(c, z.im);
}

std::uint64_t get_nat(BitReader& r) {
  int zeros = 0;
  while (!r.read()) {
    if (++zeros > 62) fail(ErrorCode::codec, "natural exceeds 63 bits");
  }
  std::uint64_t x = 1;
  for (int i = 0; i < zeros; ++i) x = (x << 1) | (r.read() ? 1 : 0);
  return x - 1;
}

std::int64_t get_int(BitReader& r) { return unzigzag(get_nat(r)); }

Rational get_rational(BitReader& r) {
  const std::int64_t num = get_int(r);
  const std::uint64_t denm1 = get_nat(r);
  if (denm1 >= static_cast<std::uint64_t>(INT64_MAX)) fail(ErrorCode::codec, "denominator too large");
  const auto den = static_cast<std::int64_t>(denm1 + 1);
  if (num == INT64_MIN || std::gcd(num, den) != 1) {
    fail(ErrorCode::codec, "rational " + std::to_string(num) + "/" + std::to_string(den) +
                               " is not in lowest terms");
  }
  return Rational(num, den);
}

GaussianRational get_gaussian(BitReader& r) {
  GaussianRational z;
  z.re = get_rational(r);
  z.im = get_rational(r);
  return z;
}

Code encode_nat(std::uint64_t k) {
  Code c;
  put_nat(c, k);
  return c;
}

// ---------------------------------------------------------------------------

std::vector<Complex> SparseVector::dense() const {
  std::vector<Complex> v(dim());
  for (const auto& [i, z] : entries) v[i] = z.to_complex();
  return v;
}

std::vector<GaussianRational> SparseVector::dense_exact() const {
  std::vector<GaussianRational> v(dim());
  for (const auto& [i, z] : entries) v[i] = z;
  return v;
}

void SparseVector::validate() const {
  if (qubits > 20) fail(ErrorCode::codec, "sparse vector: too many qubits");
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].first >= dim()) fail(ErrorCode::codec, "sparse vector: index out of range");
    if (entries[k].second.is_zero()) fail(ErrorCode::codec, "sparse vector: stored zero entry");
    if (k > 0 && entries[k].first <= entries[k - 1].first) {
      fail(ErrorCode::codec, "sparse vector: indices not strictly increasing");
    }
  }
}

SparseVector SparseVector::from_dense(const std::vector<GaussianRational>& v) {
  SparseVector s;
  if (v.empty() || !std::has_single_bit(v.size())) {
    fail(ErrorCode::dimension_mismatch, "sparse vector: length is not a power of two");
  }
  s.qubits = static_cast<unsigned>(std::countr_zero(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.entries.emplace_back(i, v[i]);
  return s;
}

ElementaryMatrix ElementaryMatrix::from_rational(const RationalMatrix& m) {
  if (m.rows() == 0 || !std::has_single_bit(m.rows()) || !std::has_single_bit(m.cols())) {
    fail(ErrorCode::dimension_mismatch, "elementary matrix: dimensions must be powers of two");
  }
  ElementaryMatrix e;
  e.row_qubits = static_cast<unsigned>(std::countr_zero(m.rows()));
  e.col_qubits = static_cast<unsigned>(std::countr_zero(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) e.entries.emplace_back(i * m.cols() + j, m(i, j));
  return e;
}

RationalMatrix ElementaryMatrix::to_rational() const {
  validate();
  RationalMatrix m(std::size_t{1} << row_qubits, std::size_t{1} << col_qubits);
  for (const auto& [k, z] : entries) m(k / m.cols(), k % m.cols()) = z;
  return m;
}

void ElementaryMatrix::validate() const {
  if (row_qubits > 12 || col_qubits > 12) fail(ErrorCode::codec, "elementary matrix: too many qubits");
  const std::uint64_t size = std::uint64_t{1} << (row_qubits + col_qubits);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].first >= size) fail(ErrorCode::codec, "elementary matrix: index out of range");
    if (entries[k].second.is_zero()) fail(ErrorCode::codec, "elementary matrix: stored zero entry");
    if (k > 0 && entries[k].first <= entries[k - 1].first) {
      fail(ErrorCode::codec, "elementary matrix: indices not strictly increasing");
    }
  }
}

EncodableObject EncodableObject::pair(EncodableObject a, EncodableObject b) {
  return {Pair{std::make_shared<const EncodableObject>(std::move(a)),
               std::make_shared<const EncodableObject>(std::move(b))}};
}

bool operator==(const EncodableObject& a, const EncodableObject& b) {
  if (a.value.index() != b.value.index()) return false;
  if (const auto* pa = std::get_if<Pair>(&a.value)) {
    const auto& pb = std::get<Pair>(b.value);
    return *pa->first == *pb.first && *pa->second == *pb.second;
  }
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Pair>) {
          return false;
        } else {
          return x == std::get<T>(b.value);
        }
      },
      a.value);
}

namespace {

template <class Entries>
void put_sparse_entries(Code& c, const Entries& entries) {
  put_nat(c, entries.size());
  std::uint64_t prev = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::uint64_t idx = entries[k].first;
    put_nat(c, k == 0 ? idx : idx - prev - 1);
    put_gaussian(c, entries[k].second);
    prev = idx;
  }
}

template <class Entries>
std::size_t sparse_entries_length(const Entries& entries) {
  std::size_t len = nat_length(entries.size());
  std::uint64_t prev = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::uint64_t idx = entries[k].first;
    len += nat_length(k == 0 ? idx : idx - prev - 1) + gaussian_length(entries[k].second);
    prev = idx;
  }
  return len;
}

// Reads count then entries; indices are checked against `limit`.
std::vector<std::pair<std::uint64_t, GaussianRational>> get_sparse_entries(BitReader& r,
                                                                           std::uint64_t limit) {
  const std::uint64_t count = get_nat(r);
  if (count > limit) fail(ErrorCode::codec, "sparse entry count exceeds dimension");
  std::vector<std::pair<std::uint64_t, GaussianRational>> out;
  out.reserve(count);
  std::uint64_t idx = 0;
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint64_t step = get_nat(r);
    if (k == 0) {
      idx = step;
    } else {
      if (step >= limit) fail(ErrorCode::codec, "sparse index out of range");
      idx = idx + step + 1;
    }
    if (idx >= limit) fail(ErrorCode::codec, "sparse index out of range");
    GaussianRational z = get_gaussian(r);
    if (z.is_zero()) fail(ErrorCode::codec, "sparse entry is zero");
    out.emplace_back(idx, z);
  }
  return out;
}

void put_tag(Code& c, int tag) {
  c.push(tag & 2);
  c.push(tag & 1);
}

int get_tag(BitReader& r) {
  const int hi = r.read() ? 2 : 0;
  return hi | (r.read() ? 1 : 0);
}

void put_payload(Code& c, const EncodableObject& x);

void put_object(Code& c, const EncodableObject& x) {
  switch (x.value.index()) {
    case 0: put_tag(c, 0); put_tag(c, 0); break;
    case 1: put_tag(c, 0); put_tag(c, 1); break;
    case 2: put_tag(c, 0); put_tag(c, 2); break;
    case 3: put_tag(c, 0); put_tag(c, 3); break;
    case 4: put_tag(c, 1); break;
    case 5: put_tag(c, 2); break;
    default: put_tag(c, 3); break;
  }
  put_payload(c, x);
}

void put_payload(Code& c, const EncodableObject& x) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Natural>) {
          put_nat(c, v.value);
        } else if constexpr (std::is_same_v<T, Integer>) {
          put_int(c, v.value);
        } else if constexpr (std::is_same_v<T, Rational>) {
          put_rational(c, v);
        } else if constexpr (std::is_same_v<T, GaussianRational>) {
          put_gaussian(c, v);
        } else if constexpr (std::is_same_v<T, SparseVector>) {
          v.validate();
          put_nat(c, v.qubits);
          put_sparse_entries(c, v.entries);
        } else if constexpr (std::is_same_v<T, ElementaryMatrix>) {
          v.validate();
          put_nat(c, v.row_qubits);
          put_nat(c, v.col_qubits);
          put_sparse_entries(c, v.entries);
        } else {
          if (!v.first || !v.second) fail(ErrorCode::codec, "pair with missing component");
          put_object(c, *v.first);
          put_object(c, *v.second);
        }
      },
      x.value);
}

}  // namespace

Code encode_payload(const EncodableObject& x) {
  Code c;
  put_payload(c, x);
  return c;
}

Code encode_object(const EncodableObject& x) {
  Code c;
  put_object(c, x);
  return c;
}

EncodableObject decode_object(BitReader& r) {
  switch (get_tag(r)) {
    case 0:
      switch (get_tag(r)) {
        case 0: return {Natural{get_nat(r)}};
        case 1: return {Integer{get_int(r)}};
        case 2: return {get_rational(r)};
        default: return {get_gaussian(r)};
      }
    case 1: {
      SparseVector v;
      const std::uint64_t q = get_nat(r);
      if (q > 20) fail(ErrorCode::codec, "sparse vector: too many qubits");
      v.qubits = static_cast<unsigned>(q);
      v.entries = get_sparse_entries(r, v.dim());
      return {std::move(v)};
    }
    case 2: {
      ElementaryMatrix m;
      const std::uint64_t rq = get_nat(r);
      const std::uint64_t cq = get_nat(r);
      if (rq > 12 || cq > 12) fail(ErrorCode::codec, "elementary matrix: too many qubits");
      m.row_qubits = static_cast<unsigned>(rq);
      m.col_qubits = static_cast<unsigned>(cq);
      m.entries = get_sparse_entries(r, std::uint64_t{1} << (rq + cq));
      return {std::move(m)};
    }
    default: {
      EncodableObject a = decode_object(r);
      EncodableObject b = decode_object(r);
      return EncodableObject::pair(std::move(a), std::move(b));
    }
  }
}

EncodableObject decode_object(const Code& c) {
  BitReader r(c);
  EncodableObject x = decode_object(r);
  if (!r.at_end()) fail(ErrorCode::codec, "trailing bits after object code");
  return x;
}

Code encode_state(const SparseVector& v) {
  v.validate();
  if (v.entries.empty()) fail(ErrorCode::codec, "state code of the zero vector");
  Code c;
  put_sparse_entries(c, v.entries);
  return c;
}

std::size_t state_code_length(const SparseVector& v) { return sparse_entries_length(v.entries); }

std::optional<SparseVector> decode_state(BitReader& r, unsigned qubits) {
  try {
    SparseVector v;
    v.qubits = qubits;
    v.entries = get_sparse_entries(r, v.dim());
    if (v.entries.empty()) return std::nullopt;
    std::vector<GaussianRational> values;
    values.reserve(v.entries.size());
    for (const auto& e : v.entries) values.push_back(e.second);
    if (exact_norm_squared(values) > 1) return std::nullopt;
    return v;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::codec) return std::nullopt;
    throw;
  }
}

Code encode_index_pair(std::uint64_t i, std::uint64_t j) {
  Code c;
  c.push(i != j);
  put_nat(c, i);
  if (i != j) put_nat(c, j);
  return c;
}

std::size_t index_pair_length(std::uint64_t i, std::uint64_t j) {
  return 1 + nat_length(i) + (i != j ? nat_length(j) : 0);
}

double kraft_check(std::span<const Code> codes) {
  std::vector<std::string> text(codes.size());
  for (std::size_t k = 0; k < codes.size(); ++k) text[k] = codes[k].to_string();
  std::vector<std::size_t> order(codes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return text[a] < text[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Code& a = codes[order[k - 1]];
    const Code& b = codes[order[k]];
    if (a.is_prefix_of(b)) {
      fail(ErrorCode::codec, "prefix violation: \"" + a.to_string() + "\" (#" +
                                 std::to_string(order[k - 1]) + ") is a prefix of \"" +
                                 b.to_string() + "\" (#" + std::to_string(order[k]) + ")");
    }
  }
  double sum = 0.0;
  for (const auto& c : codes) sum += std::ldexp(1.0, -static_cast<int>(c.size()));
  if (sum > 1.0 + 1e-12) fail(ErrorCode::codec, "Kraft sum exceeds 1");
  return sum;
}

}  // namespace qgacs
