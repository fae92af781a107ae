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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qgacs/codec.hpp"
#include "qgacs/matrix.hpp"

namespace qgacs {

/// Surrogate complexity: payload code length.
std::size_t complexity(const EncodableObject& x);
/// 2^-complexity(x).
double surrogate_m(const EncodableObject& x);

/// Convenience wrappers for the objects used throughout.
std::size_t nat_complexity(std::uint64_t k);
std::size_t matrix_complexity(const RationalMatrix& m);

/// A ledger term: canonical state plus its relativized code.
struct ElementaryState {
  SparseVector vector;
  Code code;

  std::size_t length() const noexcept { return code.size(); }
  double weight() const;
  std::vector<Complex> amplitudes() const { return vector.dense(); }
};

/// All canonical states over n qubits with code length <= budget and
/// squared norm in (0, 1], sorted by (length, code).
std::vector<ElementaryState> enumerate_states(unsigned n_qubits, unsigned budget);

class UniversalMatrix {
 public:
  static UniversalMatrix build(unsigned n_qubits, unsigned budget);
  /// Rebuilds the matrix from a stored ledger; the ledger must be exactly
  /// the enumeration at (n, budget).
  static UniversalMatrix from_ledger(unsigned n_qubits, unsigned budget,
                                     std::vector<ElementaryState> ledger);

  unsigned qubits() const noexcept { return n_; }
  unsigned budget() const noexcept { return budget_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  const std::vector<ElementaryState>& ledger() const noexcept { return ledger_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace().real(); }
  /// Code of (n, budget): what a test needs to recompute this matrix.
  std::size_t description_length() const;

 private:
  unsigned n_ = 0;
  unsigned budget_ = 0;
  std::vector<ElementaryState> ledger_;
  ComplexMatrix m_;
};

/// Shared, lazily built instance per (n, budget).
std::shared_ptr<const UniversalMatrix> universal_matrix(unsigned n_qubits, unsigned budget);

/// Ceiling of -log2 t, or infinite when t <= 0.
struct Entropy {
  bool infinite = false;
  int value = 0;

  static Entropy from_trace(double t);
  std::string to_string() const;
  friend bool operator==(const Entropy&, const Entropy&) = default;
};

Entropy entropy(const ComplexMatrix& sigma, const ComplexMatrix& mu);
Entropy entropy(const SemiDensityMatrix& sigma, const UniversalMatrix& mu);

struct SubsystemConstant {
  /// Largest code-length increase from appending |0..0> to a ledger state.
  int ledger_overhead = 0;
  /// Whether every appended image is itself within the larger budget.
  bool ledger_contained = true;
  /// log2 of the least eigenvalue of mu_n^-1/2 Tr_B mu_2n mu_n^-1/2.
  double log2_lambda_min = 0.0;
  /// Least integer c with Tr_B mu_2n >= 2^-c mu_n.
  int bits = 0;
};

SubsystemConstant subsystem_constant(const UniversalMatrix& mu_n, const UniversalMatrix& mu_2n);

/// Conditional candidates keyed by the object they are relativized to.
class ConditionRegistry {
 public:
  struct Candidate {
    ComplexMatrix matrix;
    double weight;
  };

  /// Validates the candidate as a semi-density and the per-key weight sum.
  void add(const EncodableObject& key, ComplexMatrix candidate, double weight);
  const std::vector<Candidate>& candidates(const EncodableObject& key) const;

 private:
  std::map<std::string, std::vector<Candidate>> by_key_;
};

/// 1/2 base + 1/2 sum of weight * candidate for the key.
SemiDensityMatrix conditional_mu(const EncodableObject& key, const ConditionRegistry& registry,
                                 const UniversalMatrix& base);

/// Monotone chain of semi-densities with a weight; the limit is the last.
class LowerComputableMatrix {
 public:
  LowerComputableMatrix(std::vector<ComplexMatrix> approximants, double weight);
  /// The budgeted universal matrices at increasing budgets.
  static LowerComputableMatrix mu_chain(unsigned n_qubits, const std::vector<unsigned>& budgets);

  const std::vector<ComplexMatrix>& approximants() const noexcept { return approx_; }
  const ComplexMatrix& limit() const { return approx_.back(); }
  double weight() const noexcept { return weight_; }
  /// Least eigenvalue over consecutive differences.
  double monotonicity_margin() const;

 private:
  std::vector<ComplexMatrix> approx_;
  double weight_;
};

}  // namespace qgacs
