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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgacs/matrix.hpp"
#include "qgacs/quantum_ops.hpp"
#include "qgacs/universal.hpp"

namespace qgacs {

/// One step in the history of a test. `weight_bits` is the factor 2^-bits
/// applied to the weight; `scale_bits` the factor applied to the matrix
/// (product tests rescaled to stay admissible).
struct TransportRecord {
  std::string kind;
  std::string detail;
  double weight_bits = 0.0;
  double scale_bits = 0.0;

  double total_bits() const { return weight_bits + scale_bits; }
};

struct Test {
  std::string id;
  ComplexMatrix matrix;
  double weight = 0.0;
  std::vector<TransportRecord> provenance;
};

/// Tests against one semi-density rho: every member satisfies Tr nu rho <= 1.
struct TestFamily {
  std::string id;
  std::size_t dim = 0;
  std::vector<Test> tests;

  double weight_sum() const;
  /// Largest Tr nu rho over the members.
  double max_admission(const ComplexMatrix& rho) const;
};

struct FamilyOptions {
  /// Ledger states up to this code length generate tests.
  unsigned generator_budget = 18;
};

/// Identity, dyadically scaled ledger projectors and, when rho is invertible
/// and has a description of known length, rho^-1/2 mu rho^-1/2.
TestFamily default_test_family(const ComplexMatrix& rho, const UniversalMatrix& mu,
                               std::optional<std::size_t> description_length,
                               const FamilyOptions& options = {});

struct ScoreLine {
  std::string test_id;
  double weight = 0.0;
  double trace_value = 0.0;
  std::vector<TransportRecord> provenance;
};

struct Score {
  double value = 0.0;  // log2 of the aggregate; -inf when it vanishes
  std::string family_id;
  std::vector<ScoreLine> ledger;

  bool is_neg_inf() const;
};

Score deficiency(const ComplexMatrix& sigma, const TestFamily& family, bool with_ledger = false);

/// Each member's weight halved; the 1-bit cost is recorded.
TestFamily mix(const TestFamily& a, const TestFamily& b, const std::string& id);

/// U^dagger t U, weight times 2^-cost.
Test transport_conjugate(const Test& t, const ComplexMatrix& u, double cost_bits);
TestFamily transport_conjugate(const TestFamily& f, const ComplexMatrix& u, double cost_bits,
                               const std::string& label);
/// t (x) I over m extra qubits, weight times 2^-nat_length(m).
Test transport_extend(const Test& t, unsigned m_qubits);
TestFamily transport_extend(const TestFamily& f, unsigned m_qubits);
/// sum_k m(k)/Tr(E_k rho) E_k over outcomes of positive probability.
Test transport_povm(const Povm& e, const ComplexMatrix& rho, double cost_bits);

/// log2 sum_x gamma(x) m(x) / P(x), m(x) = 2^-nat_length(x).
double classical_deficiency(const std::vector<double>& gamma, const std::vector<double>& p);

// ---------------------------------------------------------------------------
// Product tests A (x) B against mu (x) mu.

struct Factor {
  std::string id;
  ComplexMatrix matrix;
};

/// A set of product tests sharing factor lists. Pair (i, j) has weight
/// scale * w(i, j), with w either separable (lw_i rw_j) or dense.
struct ProductBlock {
  std::string id;
  std::vector<Factor> left;
  std::vector<Factor> right;
  bool separable = true;
  std::vector<double> left_weights;
  std::vector<double> right_weights;
  std::vector<double> dense;  // left.size() x right.size(), row-major
  double scale = 1.0;
  bool symmetric = false;
  std::vector<TransportRecord> provenance;
  /// Outcome scales s_k of a relativization block (empty otherwise), and
  /// the bits its pair weights pay beyond the index-pair code.
  std::vector<int> outcome_scales;
  double relativization_bits = 0.0;

  double pair_weight(std::size_t i, std::size_t j) const;
  double weight_sum() const;
  std::size_t pair_count() const { return left.size() * right.size(); }
};

struct ProductFamily {
  std::string id;
  std::size_t dim = 0;
  std::vector<ProductBlock> blocks;

  double weight_sum() const;
  std::size_t pair_count() const;
  const ProductBlock* find(const std::string& block_id) const;
  /// Largest Tr A mu_left or Tr B mu_right over all factors.
  double max_admission(const ComplexMatrix& mu_left, const ComplexMatrix& mu_right) const;
};

struct RelativizedPovm {
  std::string name;
  const Povm* povm;
  double cost_bits;
};

struct ProductOptions {
  unsigned generator_budget = 18;
  std::vector<RelativizedPovm> povms;
};

/// Generic block (identity, scaled ledger projectors, mu-conjugated
/// projectors), the computational-basis pair block and one block per
/// relativized POVM.
ProductFamily product_test_family(const UniversalMatrix& mu, const ProductOptions& options = {});

Score mutual_information(const ComplexMatrix& sigma, const ComplexMatrix& rho,
                         const ProductFamily& family, bool with_ledger = false);

/// Exact sum over pairs of w Tr (A (x) B) P / Tr P, P the projector on the
/// symmetric subspace: the Haar mean of 2^I(psi:psi).
double symmetric_projector_value(const ProductFamily& family);

ProductFamily mix(const ProductFamily& a, const ProductFamily& b, const std::string& id);

/// Left factors A -> 2^-d U A U^dagger; weight times 2^-cost.
ProductBlock conjugate_left(const ProductBlock& b, const ComplexMatrix& u, int d, double cost_bits,
                            const std::string& label);
/// Both factors conjugated; the transform is paid for once per pair.
ProductBlock conjugate_both(const ProductBlock& b, const ComplexMatrix& u, int d, double cost_bits,
                            const std::string& label);
/// A (x) B -> 2^-2d (A (x) I_m) (x) (B (x) I_m); weight times 2^-nat_length(m).
ProductBlock extend_both(const ProductBlock& b, unsigned m_qubits, int d);
/// A (x) B -> 2^-(dl+dr) (A (x) I_n) (x) (I_n (x) B); weight times 2^-nat_length(n).
ProductBlock cross_extend(const ProductBlock& b, unsigned n_qubits, int d_left, int d_right);
/// E (x) F over 2n qubits -> 2^-(dn+dx) M_{E nu} (x) M_{F xi}; weight times
/// 2^-(k_nu + k_xi + 2).
ProductBlock m_reduce_block(const ProductBlock& b, const ComplexMatrix& nu, const ComplexMatrix& xi,
                            int d_nu, int d_xi, std::size_t k_nu, std::size_t k_xi);
inline constexpr double kReductionTagBits = 2.0;

ProductFamily map_blocks(const ProductFamily& f, const std::string& id, std::size_t dim,
                         const std::function<ProductBlock(const ProductBlock&)>& fn);

struct MeasurementBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  bool holds = true;
  bool dropped = false;  // zero outcome probability
};

/// Classical information of outcome indices: K(i) + K(j) - K(pair(i, j)).
double index_information(std::uint64_t i, std::uint64_t j);

/// I(i:j) + log Esigma(i) Erho(j) - K(I(i:j)) <= I(sigma:rho) + constant,
/// the constant read from the relativization block `block_id`. A known
/// I(sigma:rho) may be passed to skip rescoring.
MeasurementBound measurement_info_bound(const Povm& e, const ComplexMatrix& sigma,
                                        const ComplexMatrix& rho, std::size_t i, std::size_t j,
                                        const ProductFamily& family, const std::string& block_id,
                                        std::optional<double> info_value = std::nullopt);
/// log sum_{i,j} 2^I(i:j) Esigma(i) Erho(j) <= I(sigma:rho) + constant.
MeasurementBound measurement_sum_bound(const Povm& e, const ComplexMatrix& sigma,
                                       const ComplexMatrix& rho, const ProductFamily& family,
                                       const std::string& block_id,
                                       std::optional<double> info_value = std::nullopt);

}  // namespace qgacs
