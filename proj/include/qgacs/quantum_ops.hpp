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
#include <optional>
#include <random>
#include <vector>

#include "qgacs/matrix.hpp"
#include "qgacs/rational.hpp"

namespace qgacs {

/// Finite POVM. Elements carry an exact form when they are elementary, which
/// is what gives the POVM a code length.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> outcomes);
  explicit Povm(std::vector<RationalMatrix> outcomes);

  static Povm computational(unsigned n_qubits);
  /// Basis R^{(x)n}|k>, R = [[3/5, 4/5], [4/5, -3/5]].
  static Povm rotated(unsigned n_qubits);
  /// {|0><0|/2, |0><0|/2 + P/2, P/2} with P the projector off |0>.
  static Povm coarse_three(unsigned n_qubits);

  std::size_t size() const noexcept { return outcomes_.size(); }
  std::size_t dim() const noexcept { return outcomes_.front().rows(); }
  const ComplexMatrix& operator[](std::size_t k) const { return outcomes_[k]; }
  const std::vector<ComplexMatrix>& outcomes() const noexcept { return outcomes_; }
  bool is_elementary() const noexcept { return exact_.has_value(); }
  /// nat(K) followed by the payload of every element. Requires exact form.
  std::size_t code_length() const;

 private:
  void validate() const;
  std::vector<ComplexMatrix> outcomes_;
  std::optional<std::vector<RationalMatrix>> exact_;
};

/// Tr E_k sigma for every outcome.
std::vector<double> apply_povm(const Povm& e, const ComplexMatrix& sigma);

/// [[3/5, 4/5], [4/5, -3/5]] tensored n times.
RationalMatrix rational_rotation(unsigned n_qubits);
/// Permutation |i>|j> -> |i>|j xor i> on 2n qubits.
RationalMatrix copy_unitary_exact(unsigned n_qubits);
UnitaryTransform copy_unitary(unsigned n_qubits);

/// Counter-based stream: identical (seed, stream) give identical draws.
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream);
/// Standard normal pair by Box-Muller from 53-bit uniforms.
std::pair<double, double> normal_pair(std::mt19937_64& rng);

class HaarSampler {
 public:
  HaarSampler(unsigned n_qubits, std::uint64_t seed) : n_(n_qubits), seed_(seed) {}
  PureState sample(std::uint64_t index) const;
  unsigned qubits() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  unsigned n_;
  std::uint64_t seed_;
};

/// G G^dagger / Tr G G^dagger for a d x (d+2) G with entries a + bi, |a|, |b| <= 2;
/// redrawn until the result is invertible.
RationalMatrix random_elementary_density(unsigned n_qubits, std::mt19937_64& rng);
/// Full-rank Ginibre density, trace 1.
ComplexMatrix random_density(unsigned n_qubits, std::mt19937_64& rng);

struct CloneOutput {
  ComplexMatrix first;   // Tr_B joint
  ComplexMatrix second;  // Tr_A joint
  ComplexMatrix joint;
};

/// C (|psi><psi| (x) |0..0><0..0|) C^dagger and its two marginals.
CloneOutput clone_pipeline(const PureState& psi, const UnitaryTransform& c);

}  // namespace qgacs
