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

#include "qgacs/universal.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "qgacs/error.hpp"

namespace qgacs {

std::size_t complexity(const EncodableObject& x) { return encode_payload(x).size(); }

double surrogate_m(const EncodableObject& x) {
  return std::ldexp(1.0, -static_cast<int>(complexity(x)));
}

std::size_t nat_complexity(std::uint64_t k) { return nat_length(k); }

std::size_t matrix_complexity(const RationalMatrix& m) {
  return complexity({ElementaryMatrix::from_rational(m)});
}

double ElementaryState::weight() const { return std::ldexp(1.0, -static_cast<int>(length())); }

namespace {

struct GaussianCandidate {
  GaussianRational value;
  std::size_t cost;
  double norm;
};

// Gaussian rationals with |z| <= 1 and code length <= max_cost, cheapest first.
std::vector<GaussianCandidate> gaussian_candidates(std::size_t max_cost) {
  struct RationalCandidate {
    Rational value;
    std::size_t cost;
  };
  std::vector<RationalCandidate> rationals;
  if (max_cost >= 2) rationals.push_back({Rational(0), rational_length(Rational(0))});
  for (std::int64_t den = 1;; ++den) {
    const std::size_t den_cost = nat_length(static_cast<std::uint64_t>(den - 1));
    if (den_cost + int_length(1) > max_cost) break;
    for (std::int64_t num = 1; num <= den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      for (std::int64_t s : {num, -num}) {
        const std::size_t cost = int_length(s) + den_cost;
        if (cost <= max_cost) rationals.push_back({Rational(s, den), cost});
      }
    }
  }
  std::stable_sort(rationals.begin(), rationals.end(),
                   [](const RationalCandidate& x, const RationalCandidate& y) { return x.cost < y.cost; });
  std::vector<GaussianCandidate> out;
  for (const auto& a : rationals) {
    for (const auto& b : rationals) {
      if (a.cost + b.cost > max_cost) break;
      if (a.value.is_zero() && b.value.is_zero()) continue;
      // |a|^2 + |b|^2 <= 1 exactly; denominators are far below 2^31.
      const __int128 an = a.value.num(), ad = a.value.den();
      const __int128 bn = b.value.num(), bd = b.value.den();
      if (an * an * bd * bd + bn * bn * ad * ad > ad * ad * bd * bd) continue;
      const double norm = a.value.to_double() * a.value.to_double() +
                          b.value.to_double() * b.value.to_double();
      out.push_back({{a.value, b.value}, a.cost + b.cost, norm});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GaussianCandidate& x, const GaussianCandidate& y) { return x.cost < y.cost; });
  return out;
}

constexpr std::size_t kMinEntryCost = 7;  // nat(0) index step + cheapest nonzero value

class StateSearch {
 public:
  StateSearch(unsigned n, unsigned budget) : n_(n), dim_(std::size_t{1} << n), budget_(budget) {
    const std::size_t header_min = nat_length(1);
    if (budget_ >= header_min + kMinEntryCost) {
      gaussians_ = gaussian_candidates(budget_ - header_min - 1);
    }
  }

  std::vector<SparseVector> run() {
    for (std::size_t k = 1; k <= dim_; ++k) {
      const std::size_t header = nat_length(k);
      if (header + k * kMinEntryCost > budget_) break;
      count_ = k;
      chosen_.clear();
      descend(0, 0, budget_ - header, 0.0);
    }
    return std::move(found_);
  }

 private:
  void descend(std::size_t pos, std::uint64_t next_index, std::size_t remaining, double norm) {
    if (pos == count_) {
      accept(norm);
      return;
    }
    const std::size_t reserve = (count_ - pos - 1) * kMinEntryCost;
    for (std::uint64_t idx = next_index; idx < dim_; ++idx) {
      const std::size_t idx_cost = nat_length(pos == 0 ? idx : idx - next_index);
      if (idx_cost + 6 + reserve > remaining) break;
      const std::size_t value_budget = remaining - idx_cost - reserve;
      for (std::size_t g = 0; g < gaussians_.size(); ++g) {
        const auto& cand = gaussians_[g];
        if (cand.cost > value_budget) break;
        const double next_norm = norm + cand.norm;
        if (next_norm > 1.0 + 1e-9) continue;
        chosen_.emplace_back(idx, g);
        descend(pos + 1, idx + 1, remaining - idx_cost - cand.cost, next_norm);
        chosen_.pop_back();
      }
    }
  }

  void accept(double norm) {
    SparseVector v;
    v.qubits = n_;
    for (const auto& [idx, g] : chosen_) v.entries.emplace_back(idx, gaussians_[g].value);
    if (std::abs(norm - 1.0) <= 1e-9) {
      std::vector<GaussianRational> values;
      for (const auto& e : v.entries) values.push_back(e.second);
      if (exact_norm_squared(values) > 1) return;
    }
    found_.push_back(std::move(v));
  }

  unsigned n_;
  std::size_t dim_;
  std::size_t budget_;
  std::size_t count_ = 0;
  std::vector<GaussianCandidate> gaussians_;
  std::vector<std::pair<std::uint64_t, std::size_t>> chosen_;
  std::vector<SparseVector> found_;
};

}  // namespace

std::vector<ElementaryState> enumerate_states(unsigned n_qubits, unsigned budget) {
  if (n_qubits < 1 || n_qubits > 10) {
    fail(ErrorCode::invalid_argument, "enumerate_states: qubit count must be in [1, 10]");
  }
  if (budget > 40) fail(ErrorCode::invalid_argument, "enumerate_states: budget above 40 bits");
  StateSearch search(n_qubits, budget);
  std::vector<ElementaryState> out;
  for (auto& v : search.run()) {
    Code c = encode_state(v);
    if (c.size() <= budget) out.push_back({std::move(v), std::move(c)});
  }
  std::sort(out.begin(), out.end(),
            [](const ElementaryState& a, const ElementaryState& b) { return a.code < b.code; });
  return out;
}

UniversalMatrix UniversalMatrix::build(unsigned n_qubits, unsigned budget) {
  return from_ledger(n_qubits, budget, enumerate_states(n_qubits, budget));
}

UniversalMatrix UniversalMatrix::from_ledger(unsigned n_qubits, unsigned budget,
                                             std::vector<ElementaryState> ledger) {
  UniversalMatrix mu;
  mu.n_ = n_qubits;
  mu.budget_ = budget;
  const std::size_t d = std::size_t{1} << n_qubits;
  ComplexMatrix m(d, d);
  for (std::size_t k = 0; k < ledger.size(); ++k) {
    const auto& s = ledger[k];
    if (s.vector.qubits != n_qubits) fail(ErrorCode::invalid_argument, "ledger state has wrong qubit count");
    if (s.code != encode_state(s.vector)) fail(ErrorCode::codec, "ledger code does not match its state");
    if (s.length() > budget) fail(ErrorCode::invalid_argument, "ledger state exceeds the budget");
    if (k > 0 && !(ledger[k - 1].code < s.code)) {
      fail(ErrorCode::invalid_argument, "ledger is not in canonical order");
    }
    const double w = s.weight();
    for (const auto& [i, zi] : s.vector.entries) {
      const Complex a = zi.to_complex() * w;
      for (const auto& [j, zj] : s.vector.entries) m(i, j) += a * std::conj(zj.to_complex());
    }
  }
  mu.m_ = std::move(m);
  mu.ledger_ = std::move(ledger);
  return mu;
}

std::size_t UniversalMatrix::description_length() const {
  return nat_length(n_) + nat_length(budget_);
}

std::shared_ptr<const UniversalMatrix> universal_matrix(unsigned n_qubits, unsigned budget) {
  static std::mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const UniversalMatrix>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{n_qubits, budget}];
  if (!slot) slot = std::make_shared<const UniversalMatrix>(UniversalMatrix::build(n_qubits, budget));
  return slot;
}

Entropy Entropy::from_trace(double t) {
  if (!(t > 0.0)) return {true, 0};
  int e;
  std::frexp(t, &e);
  // t = f 2^e with f in [1/2, 1), so ceil(-log2 t) = 1 - e.
  return {false, 1 - e};
}

std::string Entropy::to_string() const { return infinite ? "inf" : std::to_string(value); }

Entropy entropy(const ComplexMatrix& sigma, const ComplexMatrix& mu) {
  if (sigma.rows() != mu.rows()) fail(ErrorCode::dimension_mismatch, "entropy: dimensions differ");
  return Entropy::from_trace(trace_product(mu, sigma).real());
}

Entropy entropy(const SemiDensityMatrix& sigma, const UniversalMatrix& mu) {
  return entropy(sigma.matrix(), mu.matrix());
}

SubsystemConstant subsystem_constant(const UniversalMatrix& mu_n, const UniversalMatrix& mu_2n) {
  if (mu_2n.qubits() != 2 * mu_n.qubits()) {
    fail(ErrorCode::dimension_mismatch, "subsystem_constant: expects mu over n and 2n qubits");
  }
  SubsystemConstant out;
  const std::uint64_t shift = mu_n.dim();
  for (const auto& s : mu_n.ledger()) {
    SparseVector ext;
    ext.qubits = mu_2n.qubits();
    for (const auto& [i, z] : s.vector.entries) ext.entries.emplace_back(i * shift, z);
    const std::size_t len = state_code_length(ext);
    out.ledger_overhead = std::max(out.ledger_overhead, static_cast<int>(len) - static_cast<int>(s.length()));
    if (len > mu_2n.budget()) out.ledger_contained = false;
  }
  const ComplexMatrix marginal =
      partial_trace(mu_2n.matrix(), mu_n.dim(), mu_n.dim(), Subsystem::second);
  out.log2_lambda_min = lower_domination_exponent(marginal, mu_n.matrix());
  out.bits = ceil_bits(-out.log2_lambda_min);
  return out;
}

void ConditionRegistry::add(const EncodableObject& key, ComplexMatrix candidate, double weight) {
  if (!(weight > 0.0) || weight > 1.0) fail(ErrorCode::invalid_argument, "registry weight outside (0, 1]");
  SemiDensityMatrix checked(candidate);
  auto& list = by_key_[encode_object(key).to_string()];
  double total = weight;
  for (const auto& c : list) total += c.weight;
  if (total > 1.0 + 1e-12) fail(ErrorCode::invalid_argument, "registry weights for key exceed 1");
  list.push_back({checked.matrix(), weight});
}

const std::vector<ConditionRegistry::Candidate>& ConditionRegistry::candidates(
    const EncodableObject& key) const {
  static const std::vector<Candidate> empty;
  auto it = by_key_.find(encode_object(key).to_string());
  return it == by_key_.end() ? empty : it->second;
}

SemiDensityMatrix conditional_mu(const EncodableObject& key, const ConditionRegistry& registry,
                                 const UniversalMatrix& base) {
  ComplexMatrix m = base.matrix() * Complex(0.5);
  for (const auto& c : registry.candidates(key)) {
    if (c.matrix.rows() != m.rows()) fail(ErrorCode::dimension_mismatch, "conditional_mu: candidate dim");
    m += c.matrix * Complex(0.5 * c.weight);
  }
  return SemiDensityMatrix::assume_psd(std::move(m));
}

LowerComputableMatrix::LowerComputableMatrix(std::vector<ComplexMatrix> approximants, double weight)
    : approx_(std::move(approximants)), weight_(weight) {
  if (approx_.empty()) fail(ErrorCode::invalid_argument, "lower-computable matrix needs an approximant");
  for (const auto& a : approx_) SemiDensityMatrix::assume_psd(a);
}

LowerComputableMatrix LowerComputableMatrix::mu_chain(unsigned n_qubits,
                                                      const std::vector<unsigned>& budgets) {
  std::vector<ComplexMatrix> approx;
  for (unsigned b : budgets) approx.push_back(universal_matrix(n_qubits, b)->matrix());
  return LowerComputableMatrix(std::move(approx), 1.0);
}

double LowerComputableMatrix::monotonicity_margin() const {
  double margin = 0.0;
  for (std::size_t k = 1; k < approx_.size(); ++k) {
    margin = std::min(margin, validate_psd(hermitize(approx_[k] - approx_[k - 1]), 1e-12).min_eig);
  }
  return margin;
}

}  // namespace qgacs
