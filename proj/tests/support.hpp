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

// Generators and independent reference implementations for the tests.
// Nothing here calls the routine it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qgacs/codec.hpp"
#include "qgacs/matrix.hpp"
#include "qgacs/rational.hpp"

namespace qgacs::testing {

// ---------------------------------------------------------------------------
// Generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::uint64_t natural(std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(0, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Complex complex() { return {uniform(-1, 1), uniform(-1, 1)}; }

  ComplexMatrix matrix(std::size_t r, std::size_t c) {
    ComplexMatrix m(r, c);
    for (auto& z : m.entries()) z = complex();
    return m;
  }

  ComplexMatrix hermitian(std::size_t d) {
    ComplexMatrix a = matrix(d, d);
    return (a + a.adjoint()) * Complex(0.5);
  }

  ComplexMatrix psd(std::size_t d) {
    ComplexMatrix a = matrix(d, d);
    return a * a.adjoint();
  }

  ComplexMatrix density(std::size_t d) {
    ComplexMatrix p = psd(d);
    return p * Complex(1.0 / p.trace().real());
  }

  std::vector<Complex> unit_vector(std::size_t d) {
    std::vector<Complex> v(d);
    double s = 0.0;
    for (auto& z : v) {
      z = complex();
      s += std::norm(z);
    }
    for (auto& z : v) z /= std::sqrt(s);
    return v;
  }

  Rational rational(std::int64_t max_num = 50, std::int64_t max_den = 50) {
    return Rational(integer(-max_num, max_num), integer(1, max_den));
  }

  GaussianRational gaussian(std::int64_t max_num = 50, std::int64_t max_den = 50) {
    return {rational(max_num, max_den), rational(max_num, max_den)};
  }

  RationalMatrix rational_matrix(std::size_t d, std::int64_t max_num = 9, std::int64_t max_den = 9) {
    RationalMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = coin() ? gaussian(max_num, max_den) : GaussianRational{};
    return m;
  }

  // Canonical sparse vector with no norm constraint.
  SparseVector sparse_vector(unsigned qubits, std::size_t max_entries = 4) {
    SparseVector v;
    v.qubits = qubits;
    const std::size_t dim = std::size_t{1} << qubits;
    std::set<std::uint64_t> idx;
    const std::size_t count = 1 + natural(std::min(max_entries, dim) - 1);
    while (idx.size() < count) idx.insert(natural(dim - 1));
    for (auto i : idx) {
      GaussianRational z;
      do z = gaussian(9, 9);
      while (z.is_zero());
      v.entries.push_back({i, z});
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Oracles

namespace oracle {

// Elias gamma of k + 1, written out from its binary expansion.
inline std::string gamma(std::uint64_t k) {
  std::string bin;
  for (std::uint64_t v = k + 1; v; v >>= 1) bin.insert(bin.begin(), char('0' + (v & 1)));
  return std::string(bin.size() - 1, '0') + bin;
}

inline std::uint64_t zigzag(std::int64_t z) {
  return z >= 0 ? 2 * static_cast<std::uint64_t>(z) : 2 * static_cast<std::uint64_t>(-(z + 1)) + 1;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c)
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return out;
}

inline ComplexMatrix product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline Complex trace(const ComplexMatrix& m) {
  Complex s{};
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

// sum_k (I (x) <k|) m (I (x) |k>), or with the roles swapped.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t keep, std::size_t traced,
                                   bool trace_second) {
  ComplexMatrix out(keep, keep);
  for (std::size_t k = 0; k < traced; ++k) {
    ComplexMatrix e(traced, 1);
    e(k, 0) = 1.0;
    const ComplexMatrix id = ComplexMatrix::identity(keep);
    const ComplexMatrix v = trace_second ? kron(id, e) : kron(e, id);
    out += product(product(v.adjoint(), m), v);
  }
  return out;
}

// By definition: (i, j) entry is Tr A[i,j] B, blocks copied out by hand.
inline ComplexMatrix m_matrix(const ComplexMatrix& a, const ComplexMatrix& b, std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexMatrix blk(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) blk(r, c) = a(n * i + r, n * j + c);
      out(i, j) = trace(product(blk, b));
    }
  return out;
}

inline mpq_class kraft(const std::vector<Code>& codes) {
  mpq_class s = 0;
  for (const auto& c : codes) {
    mpz_class den = 1;
    den <<= static_cast<mp_bitcnt_t>(c.size());
    s += mpq_class(1, den);
  }
  s.canonicalize();
  return s;
}

inline bool prefix_free(const std::vector<std::string>& words) {
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b)
      if (a != b && words[b].compare(0, words[a].size(), words[a]) == 0 && words[a].size() <= words[b].size())
        return false;
  return true;
}

// Every bit string of length <= budget run through the state decoder; the
// strings it accepts in full are exactly the ledger codes.
inline std::vector<Code> exhaustive_state_codes(unsigned qubits, unsigned budget) {
  std::vector<Code> out;
  for (unsigned len = 1; len <= budget; ++len) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << len); ++w) {
      std::string bits(len, '0');
      for (unsigned b = 0; b < len; ++b)
        if ((w >> (len - 1 - b)) & 1) bits[b] = '1';
      const Code c = Code::from_bits(bits);
      BitReader r(c);
      auto v = decode_state(r, qubits);
      if (v && r.at_end()) out.push_back(c);
    }
  }
  return out;
}

// ceil(-log2 t) as the least h with 2^-h <= t, by linear search.
inline int entropy_value(double t) {
  int h = -1100;
  while (std::ldexp(1.0, -h) > t) ++h;
  return h;
}

inline double binom2(double d) { return d * (d + 1.0) / 2.0; }

// (I + SWAP) / 2 on C^d (x) C^d.
inline ComplexMatrix symmetric_projector(std::size_t d) {
  ComplexMatrix p(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      p(i * d + j, i * d + j) += 0.5;
      p(j * d + i, i * d + j) += 0.5;
    }
  return p;
}

inline double min_eigenvalue_2x2(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + b2);
}

}  // namespace oracle

}  // namespace qgacs::testing
