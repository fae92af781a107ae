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

#include "qgacs/info_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qgacs/codec.hpp"
#include "qgacs/error.hpp"

namespace qgacs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double pow2(double bits) { return std::exp2(-bits); }

// Largest k in [0, 64] with 2^k p <= 1.
int dyadic_scale(double p) {
  int k = static_cast<int>(std::min(64.0, std::floor(-std::log2(p))));
  k = std::max(k, 0);
  while (k > 0 && std::ldexp(p, k) > 1.0) --k;
  return k;
}

double log2_or_neg_inf(double s) { return s > 0.0 ? std::log2(s) : kNegInf; }

ComplexMatrix scaled(const ComplexMatrix& m, int bits) {
  return bits == 0 ? m : m * Complex(std::ldexp(1.0, -bits));
}

}  // namespace

double TestFamily::weight_sum() const {
  double s = 0.0;
  for (const auto& t : tests) s += t.weight;
  return s;
}

double TestFamily::max_admission(const ComplexMatrix& rho) const {
  double m = 0.0;
  for (const auto& t : tests) m = std::max(m, trace_product(t.matrix, rho).real());
  return m;
}

TestFamily default_test_family(const ComplexMatrix& rho, const UniversalMatrix& mu,
                               std::optional<std::size_t> description_length,
                               const FamilyOptions& options) {
  if (rho.rows() != mu.dim()) fail(ErrorCode::dimension_mismatch, "test family: rho and mu differ in size");
  TestFamily f;
  f.id = "default";
  f.dim = mu.dim();
  auto admit = [&](Test t) {
    if (trace_product(t.matrix, rho).real() <= 1.0 + tol::admission) f.tests.push_back(std::move(t));
  };

  admit({"identity", ComplexMatrix::identity(f.dim), 0.25, {{"describe", "identity", 2.0, 0.0}}});

  for (const auto& s : mu.ledger()) {
    if (s.length() > options.generator_budget) break;
    const auto amps = s.amplitudes();
    const double p = expectation(rho, amps);
    if (!(p > 0.0)) continue;
    const int k = dyadic_scale(p);
    const double bits = 2.0 + static_cast<double>(s.length() + nat_length(static_cast<std::uint64_t>(k)));
    admit({"proj:" + s.code.to_hex() + "/" + std::to_string(s.length()) + ":" + std::to_string(k),
           ComplexMatrix::outer(amps) * Complex(std::ldexp(1.0, k)), pow2(bits),
           {{"describe", "scaled projector", bits, 0.0}}});
  }

  if (description_length) {
    const auto eig = hermitian_eigen(rho);
    if (eig.values.front() > 1e-12) {
      const ComplexMatrix w = apply_spectral(eig, [](double x) { return 1.0 / std::sqrt(x); });
      const double bits = 2.0 + static_cast<double>(*description_length);
      admit({"closed-form", hermitize(w * mu.matrix() * w), pow2(bits),
             {{"describe", "rho^-1/2 mu rho^-1/2", bits, 0.0}}});
    }
  }
  return f;
}

bool Score::is_neg_inf() const { return std::isinf(value) && value < 0; }

Score deficiency(const ComplexMatrix& sigma, const TestFamily& family, bool with_ledger) {
  if (sigma.rows() != family.dim) fail(ErrorCode::dimension_mismatch, "deficiency: dimensions differ");
  Score s;
  s.family_id = family.id;
  double sum = 0.0;
  for (const auto& t : family.tests) {
    const double tv = trace_product(t.matrix, sigma).real();
    sum += t.weight * tv;
    if (with_ledger) s.ledger.push_back({t.id, t.weight, tv, t.provenance});
  }
  s.value = log2_or_neg_inf(sum);
  return s;
}

TestFamily mix(const TestFamily& a, const TestFamily& b, const std::string& id) {
  if (a.dim != b.dim) fail(ErrorCode::dimension_mismatch, "mix: families differ in dimension");
  TestFamily out;
  out.id = id;
  out.dim = a.dim;
  for (const TestFamily* f : {&a, &b}) {
    for (Test t : f->tests) {
      t.weight *= 0.5;
      t.provenance.push_back({"mixture", id, 1.0, 0.0});
      out.tests.push_back(std::move(t));
    }
  }
  return out;
}

Test transport_conjugate(const Test& t, const ComplexMatrix& u, double cost_bits) {
  if (u.rows() != t.matrix.rows()) fail(ErrorCode::dimension_mismatch, "transport_conjugate: dims differ");
  Test out = t;
  out.matrix = hermitize(u.adjoint() * t.matrix * u);
  out.weight = t.weight * pow2(cost_bits);
  out.provenance.push_back({"conjugate", "", cost_bits, 0.0});
  return out;
}

TestFamily transport_conjugate(const TestFamily& f, const ComplexMatrix& u, double cost_bits,
                               const std::string& label) {
  TestFamily out;
  out.id = f.id + "|conj:" + label;
  out.dim = f.dim;
  for (const auto& t : f.tests) {
    Test c = transport_conjugate(t, u, cost_bits);
    c.provenance.back().detail = label;
    out.tests.push_back(std::move(c));
  }
  return out;
}

Test transport_extend(const Test& t, unsigned m_qubits) {
  Test out = t;
  if (m_qubits == 0) return out;
  const double bits = static_cast<double>(nat_length(m_qubits));
  out.matrix = tensor(t.matrix, ComplexMatrix::identity(std::size_t{1} << m_qubits));
  out.weight = t.weight * pow2(bits);
  out.provenance.push_back({"extend", std::to_string(m_qubits) + " qubits", bits, 0.0});
  return out;
}

TestFamily transport_extend(const TestFamily& f, unsigned m_qubits) {
  TestFamily out;
  out.id = f.id + "|extend:" + std::to_string(m_qubits);
  out.dim = f.dim << m_qubits;
  for (const auto& t : f.tests) out.tests.push_back(transport_extend(t, m_qubits));
  return out;
}

Test transport_povm(const Povm& e, const ComplexMatrix& rho, double cost_bits) {
  const auto p = apply_povm(e, rho);
  ComplexMatrix nu(e.dim(), e.dim());
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (!(p[k] > 0.0)) continue;  // zero-probability outcomes are dropped
    nu += e[k] * Complex(pow2(static_cast<double>(nat_length(k))) / p[k]);
  }
  return {"povm", hermitize(nu), pow2(cost_bits), {{"povm", "", cost_bits, 0.0}}};
}

double classical_deficiency(const std::vector<double>& gamma, const std::vector<double>& p) {
  if (gamma.size() > p.size()) fail(ErrorCode::dimension_mismatch, "classical_deficiency: support mismatch");
  double s = 0.0;
  for (std::size_t x = 0; x < gamma.size(); ++x) {
    if (gamma[x] == 0.0) continue;
    if (!(p[x] > 0.0)) {
      fail(ErrorCode::invalid_argument,
           "classical_deficiency: P(" + std::to_string(x) + ") = 0 where gamma is positive");
    }
    s += gamma[x] * pow2(static_cast<double>(nat_length(x))) / p[x];
  }
  return log2_or_neg_inf(s);
}

// ---------------------------------------------------------------------------

double ProductBlock::pair_weight(std::size_t i, std::size_t j) const {
  return scale * (separable ? left_weights[i] * right_weights[j] : dense[i * right.size() + j]);
}

double ProductBlock::weight_sum() const {
  if (separable) {
    double l = 0.0, r = 0.0;
    for (double w : left_weights) l += w;
    for (double w : right_weights) r += w;
    return scale * l * r;
  }
  double s = 0.0;
  for (double w : dense) s += w;
  return scale * s;
}

double ProductFamily::weight_sum() const {
  double s = 0.0;
  for (const auto& b : blocks) s += b.weight_sum();
  return s;
}

std::size_t ProductFamily::pair_count() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.pair_count();
  return n;
}

const ProductBlock* ProductFamily::find(const std::string& block_id) const {
  for (const auto& b : blocks)
    if (b.id == block_id) return &b;
  return nullptr;
}

double ProductFamily::max_admission(const ComplexMatrix& mu_left, const ComplexMatrix& mu_right) const {
  double m = 0.0;
  for (const auto& b : blocks) {
    for (const auto& f : b.left) m = std::max(m, trace_product(f.matrix, mu_left).real());
    for (const auto& f : b.right) m = std::max(m, trace_product(f.matrix, mu_right).real());
  }
  return m;
}

namespace {

ProductBlock index_block(const std::string& id, const std::vector<ComplexMatrix>& elements,
                         const ComplexMatrix& mu, double extra_bits) {
  ProductBlock b;
  b.id = id;
  b.separable = false;
  b.symmetric = true;
  const std::size_t k = elements.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double p = trace_product(elements[i], mu).real();
    const int s = std::min(static_cast<int>(nat_length(i)), p > 0.0 ? dyadic_scale(p) : 64);
    b.outcome_scales.push_back(s);
    b.left.push_back({id + ":" + std::to_string(i) + ":" + std::to_string(s), scaled(elements[i], -s)});
  }
  b.right = b.left;
  b.dense.resize(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b.dense[i * k + j] = pow2(static_cast<double>(index_pair_length(i, j)));
  b.relativization_bits = extra_bits;
  b.scale = pow2(extra_bits);
  return b;
}

}  // namespace

ProductFamily product_test_family(const UniversalMatrix& mu, const ProductOptions& options) {
  ProductFamily f;
  f.id = "product-default";
  f.dim = mu.dim();
  const ComplexMatrix& m = mu.matrix();
  const ComplexMatrix w = inverse_sqrt(m);

  ProductBlock g;
  g.id = "generic";
  g.symmetric = true;
  g.scale = 0.5;
  g.left.push_back({"identity", ComplexMatrix::identity(f.dim)});
  g.left_weights.push_back(0.25);
  for (const auto& s : mu.ledger()) {
    if (s.length() > options.generator_budget) break;
    const auto amps = s.amplitudes();
    const double p = expectation(m, amps);
    const int k = dyadic_scale(p);
    const std::string tag = s.code.to_hex() + "/" + std::to_string(s.length());
    g.left.push_back({"proj:" + tag + ":" + std::to_string(k),
                      ComplexMatrix::outer(amps) * Complex(std::ldexp(1.0, k))});
    g.left_weights.push_back(pow2(2.0 + static_cast<double>(s.length() + nat_length(static_cast<std::uint64_t>(k)))));
    std::vector<Complex> wv(f.dim);
    for (std::size_t i = 0; i < f.dim; ++i)
      for (std::size_t j = 0; j < f.dim; ++j) wv[i] += w(i, j) * amps[j];
    g.left.push_back({"mu-conj:" + tag, ComplexMatrix::outer(wv)});
    g.left_weights.push_back(pow2(2.0 + static_cast<double>(s.length())));
  }
  g.right = g.left;
  g.right_weights = g.left_weights;
  g.provenance.push_back({"describe", "pair prefix 0", 1.0, 0.0});
  f.blocks.push_back(std::move(g));

  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < f.dim; ++i) {
    ComplexMatrix e(f.dim, f.dim);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  ProductBlock bb = index_block("basis", basis, m, 2.0);
  bb.provenance.push_back({"describe", "pair prefix 10", 2.0, 0.0});
  f.blocks.push_back(std::move(bb));

  for (std::size_t j = 0; j < options.povms.size(); ++j) {
    const auto& rp = options.povms[j];
    if (rp.povm->dim() != f.dim) fail(ErrorCode::dimension_mismatch, "relativized POVM has wrong dimension");
    const double prefix = 2.0 + static_cast<double>(nat_length(j));
    ProductBlock pb = index_block("povm:" + rp.name, rp.povm->outcomes(), m, prefix + rp.cost_bits);
    pb.provenance.push_back({"describe", "pair prefix 11 nat(" + std::to_string(j) + ")", prefix, 0.0});
    pb.provenance.push_back({"relativize", rp.name, rp.cost_bits, 0.0});
    f.blocks.push_back(std::move(pb));
  }
  return f;
}

namespace {

std::vector<double> factor_traces(const std::vector<Factor>& factors, const ComplexMatrix& x) {
  std::vector<double> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(trace_product(f.matrix, x).real());
  return out;
}

double block_value(const ProductBlock& b, const std::vector<double>& a, const std::vector<double>& c) {
  if (b.separable) {
    double x = 0.0, y = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) x += b.left_weights[i] * a[i];
    for (std::size_t j = 0; j < c.size(); ++j) y += b.right_weights[j] * c[j];
    return b.scale * (x * y);
  }
  const std::size_t r = c.size();
  double s = 0.0;
  if (b.symmetric) {
    // Unordered pairs so that swapping the arguments is bit-exact.
    for (std::size_t i = 0; i < a.size(); ++i) {
      s += b.dense[i * r + i] * (a[i] * c[i]);
      for (std::size_t j = i + 1; j < r; ++j) s += b.dense[i * r + j] * (a[i] * c[j] + a[j] * c[i]);
    }
  } else {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < r; ++j) s += b.dense[i * r + j] * (a[i] * c[j]);
  }
  return b.scale * s;
}

}  // namespace

Score mutual_information(const ComplexMatrix& sigma, const ComplexMatrix& rho,
                         const ProductFamily& family, bool with_ledger) {
  if (sigma.rows() != family.dim || rho.rows() != family.dim) {
    fail(ErrorCode::dimension_mismatch, "mutual_information: dimensions differ from the family");
  }
  Score s;
  s.family_id = family.id;
  double sum = 0.0;
  for (const auto& b : family.blocks) {
    const auto a = factor_traces(b.left, sigma);
    const auto c = factor_traces(b.right, rho);
    const double v = block_value(b, a, c);
    sum += v;
    if (with_ledger) {
      const double w = b.weight_sum();
      s.ledger.push_back({b.id, w, w > 0.0 ? v / w : 0.0, b.provenance});
    }
  }
  s.value = log2_or_neg_inf(sum);
  return s;
}

double symmetric_projector_value(const ProductFamily& family) {
  const double d = static_cast<double>(family.dim);
  const double binom = d * (d + 1.0) / 2.0;
  double total = 0.0;
  for (const auto& b : family.blocks) {
    // Tr (A (x) B)(I + SWAP)/2 = (Tr A Tr B + Tr AB) / 2
    if (b.separable) {
      ComplexMatrix sa(family.dim, family.dim), sb(family.dim, family.dim);
      for (std::size_t i = 0; i < b.left.size(); ++i) sa += b.left[i].matrix * Complex(b.left_weights[i]);
      for (std::size_t j = 0; j < b.right.size(); ++j) sb += b.right[j].matrix * Complex(b.right_weights[j]);
      total += b.scale * 0.5 * (sa.trace().real() * sb.trace().real() + trace_product(sa, sb).real());
    } else {
      double s = 0.0;
      for (std::size_t i = 0; i < b.left.size(); ++i) {
        const double ta = b.left[i].matrix.trace().real();
        for (std::size_t j = 0; j < b.right.size(); ++j) {
          const double w = b.dense[i * b.right.size() + j];
          if (w == 0.0) continue;
          s += w * 0.5 * (ta * b.right[j].matrix.trace().real() +
                          trace_product(b.left[i].matrix, b.right[j].matrix).real());
        }
      }
      total += b.scale * s;
    }
  }
  return total / binom;
}

ProductFamily mix(const ProductFamily& a, const ProductFamily& b, const std::string& id) {
  if (a.dim != b.dim) fail(ErrorCode::dimension_mismatch, "mix: product families differ in dimension");
  ProductFamily out;
  out.id = id;
  out.dim = a.dim;
  for (const ProductFamily* f : {&a, &b}) {
    for (ProductBlock blk : f->blocks) {
      blk.scale *= 0.5;
      blk.relativization_bits += 1.0;
      blk.provenance.push_back({"mixture", id, 1.0, 0.0});
      out.blocks.push_back(std::move(blk));
    }
  }
  return out;
}

namespace {

template <class Fn>
std::vector<Factor> map_factors(const std::vector<Factor>& in, const std::string& label, Fn&& fn) {
  std::vector<Factor> out;
  out.reserve(in.size());
  for (const auto& f : in) out.push_back({label + "(" + f.id + ")", fn(f.matrix)});
  return out;
}

ProductBlock retag(const ProductBlock& b, const std::string& label, double weight_bits, double scale_bits,
                   const std::string& detail) {
  ProductBlock out;
  out.id = label + "(" + b.id + ")";
  out.separable = b.separable;
  out.left_weights = b.left_weights;
  out.right_weights = b.right_weights;
  out.dense = b.dense;
  out.scale = b.scale * pow2(weight_bits);
  out.symmetric = false;
  out.provenance = b.provenance;
  out.provenance.push_back({label, detail, weight_bits, scale_bits});
  out.outcome_scales = b.outcome_scales;
  out.relativization_bits = b.relativization_bits + weight_bits + scale_bits;
  return out;
}

}  // namespace

ProductBlock conjugate_left(const ProductBlock& b, const ComplexMatrix& u, int d, double cost_bits,
                            const std::string& label) {
  ProductBlock out = retag(b, "conj-left", cost_bits, d, label);
  const ComplexMatrix ua = u.adjoint();
  out.left = map_factors(b.left, "conj", [&](const ComplexMatrix& a) { return scaled(hermitize(u * a * ua), d); });
  out.right = b.right;
  return out;
}

ProductBlock conjugate_both(const ProductBlock& b, const ComplexMatrix& u, int d, double cost_bits,
                            const std::string& label) {
  ProductBlock out = retag(b, "conj-both", cost_bits, 2.0 * d, label);
  const ComplexMatrix ua = u.adjoint();
  auto fn = [&](const ComplexMatrix& a) { return scaled(hermitize(u * a * ua), d); };
  out.left = map_factors(b.left, "conj", fn);
  out.right = b.symmetric ? out.left : map_factors(b.right, "conj", fn);
  out.symmetric = b.symmetric;
  return out;
}

ProductBlock extend_both(const ProductBlock& b, unsigned m_qubits, int d) {
  const double bits = static_cast<double>(nat_length(m_qubits));
  ProductBlock out = retag(b, "extend", bits, 2.0 * d, std::to_string(m_qubits) + " qubits");
  const ComplexMatrix id = ComplexMatrix::identity(std::size_t{1} << m_qubits);
  auto fn = [&](const ComplexMatrix& a) { return scaled(tensor(a, id), d); };
  out.left = map_factors(b.left, "ext", fn);
  out.right = b.symmetric ? out.left : map_factors(b.right, "ext", fn);
  out.symmetric = b.symmetric;
  return out;
}

ProductBlock cross_extend(const ProductBlock& b, unsigned n_qubits, int d_left, int d_right) {
  const double bits = static_cast<double>(nat_length(n_qubits));
  ProductBlock out = retag(b, "cross-extend", bits, d_left + d_right, std::to_string(n_qubits) + " qubits");
  const ComplexMatrix id = ComplexMatrix::identity(std::size_t{1} << n_qubits);
  out.left = map_factors(b.left, "AxI", [&](const ComplexMatrix& a) { return scaled(tensor(a, id), d_left); });
  out.right = map_factors(b.right, "IxB", [&](const ComplexMatrix& a) { return scaled(tensor(id, a), d_right); });
  return out;
}

ProductBlock m_reduce_block(const ProductBlock& b, const ComplexMatrix& nu, const ComplexMatrix& xi,
                            int d_nu, int d_xi, std::size_t k_nu, std::size_t k_xi) {
  const double bits = static_cast<double>(k_nu + k_xi) + kReductionTagBits;
  ProductBlock out = retag(b, "m-reduce", bits, d_nu + d_xi, "");
  const std::size_t n = nu.rows();
  out.left = map_factors(b.left, "M", [&](const ComplexMatrix& e) { return scaled(hermitize(m_reduce(e, nu, n)), d_nu); });
  out.right = map_factors(b.right, "M", [&](const ComplexMatrix& e) { return scaled(hermitize(m_reduce(e, xi, n)), d_xi); });
  return out;
}

ProductFamily map_blocks(const ProductFamily& f, const std::string& id, std::size_t dim,
                         const std::function<ProductBlock(const ProductBlock&)>& fn) {
  ProductFamily out;
  out.id = id;
  out.dim = dim;
  for (const auto& b : f.blocks) out.blocks.push_back(fn(b));
  return out;
}

double index_information(std::uint64_t i, std::uint64_t j) {
  return static_cast<double>(nat_length(i) + nat_length(j)) - static_cast<double>(index_pair_length(i, j));
}

namespace {

const ProductBlock& relativization_block(const ProductFamily& family, const std::string& block_id,
                                         std::size_t outcomes) {
  const ProductBlock* b = family.find(block_id);
  if (!b) fail(ErrorCode::invalid_argument, "family has no block '" + block_id + "'");
  if (b->outcome_scales.size() != outcomes) {
    fail(ErrorCode::invalid_argument, "block '" + block_id + "' does not match the POVM");
  }
  return *b;
}

}  // namespace

MeasurementBound measurement_info_bound(const Povm& e, const ComplexMatrix& sigma,
                                        const ComplexMatrix& rho, std::size_t i, std::size_t j,
                                        const ProductFamily& family, const std::string& block_id,
                                        std::optional<double> info_value) {
  const ProductBlock& b = relativization_block(family, block_id, e.size());
  if (i >= e.size() || j >= e.size()) fail(ErrorCode::invalid_argument, "outcome index out of range");
  MeasurementBound r;
  r.constant = b.relativization_bits + (static_cast<double>(nat_length(i)) - b.outcome_scales[i]) +
               (static_cast<double>(nat_length(j)) - b.outcome_scales[j]);
  r.rhs = info_value ? *info_value : mutual_information(sigma, rho, family).value;
  const double ps = apply_povm(e, sigma)[i];
  const double pr = apply_povm(e, rho)[j];
  if (!(ps > 0.0) || !(pr > 0.0)) {
    r.dropped = true;
    r.lhs = kNegInf;
    return r;
  }
  const double info = index_information(i, j);
  r.lhs = info + std::log2(ps * pr) - static_cast<double>(int_length(static_cast<std::int64_t>(info)));
  r.holds = r.lhs <= r.rhs + r.constant + 1e-9;
  return r;
}

MeasurementBound measurement_sum_bound(const Povm& e, const ComplexMatrix& sigma,
                                       const ComplexMatrix& rho, const ProductFamily& family,
                                       const std::string& block_id, std::optional<double> info_value) {
  const ProductBlock& b = relativization_block(family, block_id, e.size());
  MeasurementBound r;
  double deficit = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    deficit = std::max(deficit, static_cast<double>(nat_length(k)) - b.outcome_scales[k]);
  }
  r.constant = b.relativization_bits + 2.0 * deficit;
  r.rhs = info_value ? *info_value : mutual_information(sigma, rho, family).value;
  const auto ps = apply_povm(e, sigma);
  const auto pr = apply_povm(e, rho);
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!(ps[i] > 0.0) || !(pr[j] > 0.0)) continue;
      s += std::exp2(index_information(i, j)) * ps[i] * pr[j];
    }
  r.lhs = log2_or_neg_inf(s);
  r.holds = r.lhs <= r.rhs + r.constant + 1e-9;
  return r;
}

}  // namespace qgacs
