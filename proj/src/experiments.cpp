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

#include "qgacs/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qgacs/codec.hpp"
#include "qgacs/error.hpp"
#include "qgacs/info_lab.hpp"
#include "qgacs/quantum_ops.hpp"
#include "qgacs/universal.hpp"

namespace qgacs {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Report plumbing

double ExperimentReport::add_constant(const std::string& name, std::vector<ConstantTerm> terms) {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.bits;
  measured_constants[name] = sum;
  constant_ledger[name] = std::move(terms);
  return sum;
}

bool ExperimentReport::audit() const {
  for (const auto& [name, terms] : constant_ledger) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.bits;
    auto it = measured_constants.find(name);
    if (it == measured_constants.end() || it->second != sum) return false;
  }
  return true;
}

void ExperimentReport::fail(const std::string& what) {
  passed = false;
  if (failures.size() < 50) failures.push_back(what);
}

bool ExperimentReport::check_le(double a, double b, const std::string& what) {
  if (a <= b + 1e-9) return true;
  std::ostringstream os;
  os.precision(17);
  os << what << ": " << a << " > " << b;
  fail(os.str());
  return false;
}

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json entropy_json(const Entropy& e) {
  if (e.infinite) return "inf";
  return e.value;
}

}  // namespace

json ExperimentReport::to_json() const {
  json j;
  j["experiment_id"] = experiment_id;
  j["parameters"] = {{"qubits", params.qubits},
                     {"budget", params.budget},
                     {"samples", params.samples},
                     {"seed", params.seed},
                     {"charge_transforms", params.charge_transforms},
                     {"generator_budget", params.generator_budget},
                     {"instances", params.instances}};
  j["verdict"] = has_verdict ? (passed ? "pass" : "fail") : "data";
  json mc = json::object();
  for (const auto& [k, v] : measured_constants) mc[k] = num(v);
  j["measured_constants"] = mc;
  json ledger = json::object();
  for (const auto& [k, terms] : constant_ledger) {
    json arr = json::array();
    for (const auto& t : terms) arr.push_back({{"name", t.name}, {"bits", num(t.bits)}});
    ledger[k] = arr;
  }
  j["constant_ledger"] = ledger;
  j["constant_audit"] = audit();
  j["monte_carlo"] = monte_carlo;
  j["records"] = records;
  j["failures"] = failures;
  j["notes"] = notes;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::vector<std::string> columns;
  for (const auto& r : records) {
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.value().is_structured()) continue;
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
    }
  }
  std::ostringstream os;
  os << "experiment_id,verdict";
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  const std::string verdict = has_verdict ? (passed ? "pass" : "fail") : "data";
  for (const auto& r : records) {
    os << experiment_id << ',' << verdict;
    for (const auto& c : columns) {
      os << ',';
      if (!r.contains(c)) continue;
      const json& v = r.at(c);
      if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
          std::string q = "\"";
          for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          os << q << '"';
        } else {
          os << s;
        }
      } else {
        os << v.dump();
      }
    }
    os << '\n';
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Shared helpers

struct McStat {
  std::size_t count = 0;
  double mean = 0.0;
  double se = 0.0;
};

McStat mc_stat(const std::vector<double>& xs) {
  McStat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  if (xs.size() > 1) s.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return s;
}

// Records an MC band check; passes iff lo - 3SE <= mean <= hi + 3SE.
bool mc_band(ExperimentReport& r, const std::string& quantity, const McStat& s, double lo, double hi) {
  const double band_lo = lo - 3.0 * s.se;
  const double band_hi = hi + 3.0 * s.se;
  const bool ok = s.mean >= band_lo && s.mean <= band_hi;
  r.monte_carlo.push_back({{"quantity", quantity},
                           {"samples", s.count},
                           {"mean", num(s.mean)},
                           {"standard_error", num(s.se)},
                           {"target_low", num(lo)},
                           {"target_high", num(hi)},
                           {"band_low", num(band_lo)},
                           {"band_high", num(band_hi)},
                           {"within_band", ok}});
  if (!ok) {
    std::ostringstream os;
    os.precision(10);
    os << quantity << ": mean " << s.mean << " outside [" << band_lo << ", " << band_hi
       << "] (rerun with another --seed to separate a 3-SE fluctuation from a defect)";
    r.fail(os.str());
  }
  return ok;
}

ComplexMatrix maximally_mixed(unsigned n) { return SemiDensityMatrix::maximally_mixed(n).matrix(); }

RationalMatrix exact_maximally_mixed(unsigned n) {
  const std::size_t d = std::size_t{1} << n;
  return RationalMatrix::identity(d).scaled(Rational(1, static_cast<std::int64_t>(d)));
}

RationalMatrix exact_basis_projector(unsigned n, std::size_t i) {
  const std::size_t d = std::size_t{1} << n;
  RationalMatrix m(d, d);
  m(i, i).re = 1;
  return m;
}

RationalMatrix exact_conjugate(const RationalMatrix& u, const RationalMatrix& m) {
  return u * m * u.adjoint();
}

// Traces out the second factor of dimension `traced`.
RationalMatrix exact_partial_trace_second(const RationalMatrix& m, std::size_t keep, std::size_t traced) {
  RationalMatrix out(keep, keep);
  for (std::size_t i = 0; i < keep; ++i)
    for (std::size_t j = 0; j < keep; ++j) {
      GaussianRational s;
      for (std::size_t k = 0; k < traced; ++k) s = s + m(i * traced + k, j * traced + k);
      out(i, j) = s;
    }
  return out;
}

struct NamedUnitary {
  std::string name;
  RationalMatrix exact;
};

std::vector<NamedUnitary> unitary_battery(unsigned n) {
  std::vector<NamedUnitary> out;
  const std::size_t d = std::size_t{1} << n;
  out.push_back({"identity", RationalMatrix::identity(d)});
  out.push_back({"rotation", rational_rotation(n)});
  if (n >= 2) {
    out.push_back({"cnot", tensor(copy_unitary_exact(1), RationalMatrix::identity(d / 4))});
  } else {
    RationalMatrix x(2, 2);
    x(0, 1).re = 1;
    x(1, 0).re = 1;
    out.push_back({"pauli-x", x});
  }
  return out;
}

double transform_cost(const RationalMatrix& u, bool charge) {
  return charge ? static_cast<double>(matrix_complexity(u)) : 0.0;
}

ExperimentReport new_report(const std::string& id, const ExperimentParams& p) {
  ExperimentReport r;
  r.experiment_id = id;
  r.params = p;
  return r;
}

void require_qubits(const ExperimentParams& p, unsigned lo, unsigned hi) {
  if (p.qubits < lo || p.qubits > hi) {
    fail(ErrorCode::invalid_argument, "--qubits must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

ProductFamily product_family(const UniversalMatrix& mu, const ExperimentParams& p,
                             std::vector<RelativizedPovm> povms = {}) {
  ProductOptions o;
  o.generator_budget = p.generator_budget;
  o.povms = std::move(povms);
  return product_test_family(mu, o);
}

TestFamily plain_family(const ComplexMatrix& rho, const UniversalMatrix& mu, const ExperimentParams& p,
                        std::optional<std::size_t> description) {
  FamilyOptions o;
  o.generator_budget = p.generator_budget;
  return default_test_family(rho, mu, description, o);
}

// Upper bound of I(rho:sigma) via rho <= 2^D mu; returns (D_rho, D_sigma).
std::pair<double, double> info_dominations(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                           const ComplexMatrix& mu) {
  return {domination_exponent(rho, mu), domination_exponent(sigma, mu)};
}

}  // namespace

// ---------------------------------------------------------------------------

ExperimentReport exp_mu_build(const ExperimentParams& p) {
  require_qubits(p, 1, 6);
  auto r = new_report("mu-build", p);
  const auto mu = universal_matrix(p.qubits, p.budget);
  const auto eig = hermitian_eigen(mu->matrix());
  const double tr = mu->trace();
  r.check_le(tr, 1.0, "trace of mu");
  if (eig.values.front() < -tol::psd) r.fail("mu has a negative eigenvalue");

  // mu >= w |phi><phi| iff w <phi| mu^-1 |phi> <= 1 (mu is invertible).
  double worst = 0.0;
  if (eig.values.front() > 0.0) {
    const ComplexMatrix inv = apply_spectral(eig, [](double x) { return 1.0 / x; });
    for (const auto& s : mu->ledger()) {
      worst = std::max(worst, s.weight() * expectation(inv, s.amplitudes()));
    }
    r.check_le(worst, 1.0 + 1e-9, "ledger domination w <phi|mu^-1|phi>");
  } else {
    r.fail("mu is singular; ledger domination not checked");
  }
  std::vector<Code> codes;
  codes.reserve(mu->ledger().size());
  for (const auto& s : mu->ledger()) codes.push_back(s.code);
  const double kraft = kraft_check(codes);

  json rec = {{"check", "summary"},
              {"ledger_size", mu->ledger().size()},
              {"trace", num(tr)},
              {"min_eigenvalue", num(eig.values.front())},
              {"max_eigenvalue", num(eig.values.back())},
              {"kraft_sum", num(kraft)},
              {"ledger_domination_max", num(worst)},
              {"shortest_code", mu->ledger().empty() ? 0 : mu->ledger().front().length()}};
  r.records.push_back(rec);

  if (p.budget >= 12) {
    std::vector<unsigned> budgets;
    for (unsigned b = std::max(10u, p.budget - 8); b < p.budget; b += 4) budgets.push_back(b);
    budgets.push_back(p.budget);
    const auto chain = LowerComputableMatrix::mu_chain(p.qubits, budgets);
    const double margin = chain.monotonicity_margin();
    if (margin < -1e-12) r.fail("budget chain is not monotone");
    r.records.push_back({{"check", "budget-chain"}, {"approximants", budgets.size()}, {"min_difference_eigenvalue", num(margin)}});
  }
  if (2 * p.qubits <= 6) {
    const auto mu2 = universal_matrix(2 * p.qubits, p.budget);
    const auto sc = subsystem_constant(*mu, *mu2);
    const ComplexMatrix gap = partial_trace(mu2->matrix(), mu->dim(), mu->dim(), Subsystem::second) -
                              mu->matrix() * Complex(std::ldexp(1.0, -sc.bits));
    const auto check = validate_psd(hermitize(gap), 1e-12);
    if (!check.is_psd) r.fail("Tr_B mu_2n - 2^-c mu_n is not PSD at the measured c");
    r.add_constant("c_ext", {{"spectral subsystem constant", static_cast<double>(sc.bits)}});
    r.records.push_back({{"check", "subsystem"},
                         {"ledger_overhead", sc.ledger_overhead},
                         {"ledger_contained", sc.ledger_contained},
                         {"log2_lambda_min", num(sc.log2_lambda_min)},
                         {"c_ext", sc.bits},
                         {"gap_min_eigenvalue", num(check.min_eig)}});
  }
  return r;
}

ExperimentReport exp_entropy(const ExperimentParams& p) {
  require_qubits(p, 1, 6);
  auto r = new_report("entropy", p);
  const unsigned n = p.qubits;
  const auto mu = universal_matrix(n, p.budget);
  const double tr = mu->trace();

  const Entropy h_mixed = entropy(maximally_mixed(n), mu->matrix());
  const Entropy h_tr = Entropy::from_trace(tr);
  const int expected = static_cast<int>(n) + h_tr.value;
  if (h_mixed.infinite || h_mixed.value != expected) r.fail("H(2^-n I) != n + ceil(-log2 Tr mu)");
  r.records.push_back({{"check", "maximally-mixed"}, {"entropy", entropy_json(h_mixed)}, {"expected", expected}});

  SparseVector zero;
  zero.qubits = n;
  zero.entries.push_back({0, {Rational(1), Rational(0)}});
  const std::size_t len0 = state_code_length(zero);
  const Entropy h0 = entropy(PureState::basis(n, 0).projector(), mu->matrix());
  if (h0.infinite || h0.value > static_cast<int>(len0)) r.fail("H(|0..0>) exceeds its code length");
  r.records.push_back({{"check", "zero-state"}, {"entropy", entropy_json(h0)}, {"code_length", len0}});

  // Budget monotonicity.
  std::vector<unsigned> budgets;
  for (unsigned b : {p.budget >= 18 ? p.budget - 8 : 10u, p.budget >= 14 ? p.budget - 4 : 10u, p.budget})
    if (budgets.empty() || b > budgets.back()) budgets.push_back(b);
  HaarSampler haar(n, p.seed);
  unsigned violations = 0;
  for (unsigned k = 0; k < p.instances; ++k) {
    const ComplexMatrix s = haar.sample(k).projector();
    std::vector<Entropy> hs;
    for (unsigned b : budgets) hs.push_back(entropy(s, universal_matrix(n, b)->matrix()));
    json row = {{"check", "budget-monotonicity"}, {"instance", k}};
    for (std::size_t i = 0; i < budgets.size(); ++i) {
      row["H_B" + std::to_string(budgets[i])] = entropy_json(hs[i]);
      if (i > 0 && !hs[i - 1].infinite && (hs[i].infinite || hs[i].value > hs[i - 1].value)) ++violations;
    }
    r.records.push_back(row);
  }
  if (violations) r.fail(std::to_string(violations) + " budget-monotonicity violations");

  // Mean of 2^-H over Haar states against 2^-n Tr mu; the ceiling costs at
  // most a factor 2 from below.
  const std::uint64_t samples = p.samples ? p.samples : 20000;
  std::vector<double> vals;
  vals.reserve(samples);
  for (std::uint64_t k = 0; k < samples; ++k) {
    const PureState psi = haar.sample(1000000 + k);
    const Entropy h = Entropy::from_trace(expectation(mu->matrix(), psi.amplitudes()));
    vals.push_back(h.infinite ? 0.0 : std::ldexp(1.0, -h.value));
  }
  const double target = std::ldexp(tr, -static_cast<int>(n));
  mc_band(r, "mean 2^-H(psi)", mc_stat(vals), 0.5 * target, target);
  return r;
}

ExperimentReport exp_deficiency(const ExperimentParams& p) {
  require_qubits(p, 1, 4);
  auto r = new_report("deficiency", p);
  const unsigned n = p.qubits;
  const auto mu = universal_matrix(n, p.budget);
  const ComplexMatrix mixed = maximally_mixed(n);
  const std::size_t k_mixed = matrix_complexity(exact_maximally_mixed(n));
  const TestFamily f = plain_family(mixed, *mu, p, k_mixed);

  const double wsum = f.weight_sum();
  const double self = deficiency(mixed, f).value;
  r.check_le(self, std::log2(wsum), "d(rho|rho) for rho = 2^-n I");
  r.check_le(std::log2(wsum), 0.0, "log2 of family weight sum");
  r.check_le(f.max_admission(mixed), 1.0 + tol::admission, "admission Tr nu rho");

  // 2^n |0..0><0..0| is a member with Tr nu rho = 1.
  bool saturated = false;
  for (const auto& t : f.tests) {
    if (t.id.rfind("proj:", 0) == 0 && t.id.size() > 2 &&
        t.id.substr(t.id.rfind(':') + 1) == std::to_string(n) &&
        std::abs(t.matrix(0, 0).real() - std::ldexp(1.0, static_cast<int>(n))) < 1e-12 &&
        std::abs(trace_product(t.matrix, mixed).real() - 1.0) < 1e-12) {
      saturated = true;
    }
  }
  if (!saturated) r.fail("2^n |0..0><0..0| missing from the family of 2^-n I");
  r.records.push_back({{"check", "mixed-family"}, {"tests", f.tests.size()}, {"weight_sum", num(wsum)},
                       {"self_deficiency", num(self)}, {"saturated_projector", saturated}});

  const Test* closed = nullptr;
  for (const auto& t : f.tests)
    if (t.id == "closed-form") closed = &t;
  if (!closed) r.fail("closed-form test missing for 2^-n I");

  auto rng = rng_stream(p.seed, 1);
  for (unsigned k = 0; k < p.instances && closed; ++k) {
    const ComplexMatrix sigma = random_density(n, rng);
    const double score = deficiency(sigma, f).value;
    const double term = std::log2(trace_product(closed->matrix, sigma).real());
    const double expected = n + std::log2(trace_product(mu->matrix(), sigma).real());
    if (std::abs(term - expected) > 1e-9) r.fail("closed-form term differs from n + log2 Tr mu sigma");
    r.check_le(std::log2(closed->weight) + term, score, "score below closed-form lower bound");
    r.records.push_back({{"check", "mixed-closed-form"}, {"instance", k}, {"score", num(score)},
                         {"closed_form_log2", num(term)}, {"n_minus_H", num(n - entropy(sigma, mu->matrix()).value)}});
  }

  for (unsigned k = 0; k < p.instances; ++k) {
    const RationalMatrix rho_x = random_elementary_density(n, rng);
    const ComplexMatrix rho = rho_x.to_complex();
    const TestFamily fr = plain_family(rho, *mu, p, matrix_complexity(rho_x));
    const ComplexMatrix sigma = random_density(n, rng);
    const double self_score = deficiency(rho, fr).value;
    const double score = deficiency(sigma, fr).value;
    r.check_le(self_score, 0.0, "d(rho|rho) for elementary rho");
    r.check_le(fr.max_admission(rho), 1.0 + tol::admission, "admission Tr nu rho");
    double closed_bound = -std::numeric_limits<double>::infinity();
    for (const auto& t : fr.tests)
      if (t.id == "closed-form") closed_bound = std::log2(t.weight * trace_product(t.matrix, sigma).real());
    r.check_le(closed_bound, score, "score below closed-form lower bound");
    r.records.push_back({{"check", "elementary"}, {"instance", k}, {"tests", fr.tests.size()},
                         {"self_deficiency", num(self_score)}, {"score", num(score)},
                         {"closed_form_bound", num(closed_bound)}});
  }
  return r;
}

ExperimentReport exp_mutual_info(const ExperimentParams& p) {
  require_qubits(p, 1, 4);
  auto r = new_report("mutual-info", p);
  const unsigned n = p.qubits;
  const auto mu = universal_matrix(n, p.budget);
  const ProductFamily f = product_family(*mu, p);
  const double wsum = f.weight_sum();
  r.check_le(wsum, 1.0, "product family weight sum");
  r.check_le(f.max_admission(mu->matrix(), mu->matrix()), 1.0 + tol::admission, "factor admission Tr A mu");
  const double log_w = std::log2(wsum);

  auto rng = rng_stream(p.seed, 2);
  unsigned asym = 0;
  for (unsigned k = 0; k < p.instances; ++k) {
    const ComplexMatrix a = random_density(n, rng);
    const ComplexMatrix b = random_density(n, rng);
    const double ab = mutual_information(a, b, f).value;
    const double ba = mutual_information(b, a, f).value;
    if (ab != ba) ++asym;
    r.records.push_back({{"check", "swap-symmetry"}, {"instance", k}, {"I_ab", num(ab)}, {"I_ba", num(ba)}});
  }
  if (asym) r.fail(std::to_string(asym) + " swap-symmetry mismatches");

  // Upper bound I(rho:sigma) <= K(rho) + K(sigma) + c_family.
  auto upper = [&](const RationalMatrix& rx, const RationalMatrix& sx, const std::string& label) {
    const ComplexMatrix rho = rx.to_complex();
    const ComplexMatrix sigma = sx.to_complex();
    const double info = mutual_information(rho, sigma, f).value;
    const auto [dr, ds] = info_dominations(rho, sigma, mu->matrix());
    const double kr = static_cast<double>(matrix_complexity(rx));
    const double ks = static_cast<double>(matrix_complexity(sx));
    const double c = std::max(0.0, dr - kr) + std::max(0.0, ds - ks) + std::max(0.0, log_w);
    r.check_le(info, dr + ds + log_w, label + ": I <= D(rho) + D(sigma) + log2 sum w");
    r.check_le(info, kr + ks + c, label + ": I <= K(rho) + K(sigma) + c");
    r.records.push_back({{"check", "upper-bound"}, {"case", label}, {"info", num(info)}, {"K_rho", kr},
                         {"K_sigma", ks}, {"D_rho", num(dr)}, {"D_sigma", num(ds)}, {"c_family", num(c)}});
    return c;
  };
  const double c_mixed = upper(exact_maximally_mixed(n), exact_maximally_mixed(n), "maximally-mixed");
  r.add_constant("c_family_mixed", {{"D(2^-n I) - K(2^-n I), both sides", c_mixed}});
  for (unsigned k = 0; k < std::min(p.instances, 10u); ++k) {
    upper(random_elementary_density(n, rng), random_elementary_density(n, rng), "elementary-" + std::to_string(k));
  }

  // Basis states: I(|i>:|i>) >= K(i) - c_basis.
  const ProductBlock* basis = f.find("basis");
  double deficit = 0.0;
  for (std::size_t i = 0; i < mu->dim(); ++i)
    deficit = std::max(deficit, static_cast<double>(nat_length(i)) - basis->outcome_scales[i]);
  const double c_basis = r.add_constant(
      "c_basis", {{"block prefix", 2.0}, {"index-pair tag", 1.0}, {"scale deficit, both factors", 2.0 * deficit}});
  for (std::size_t i = 0; i < mu->dim(); ++i) {
    const ComplexMatrix e = PureState::basis(n, i).projector();
    const double info = mutual_information(e, e, f).value;
    const double k = static_cast<double>(nat_length(i));
    r.check_le(k - c_basis, info, "basis " + std::to_string(i) + ": I(|i>:|i>) >= K(i) - c");
    r.records.push_back({{"check", "basis"}, {"index", i}, {"info", num(info)}, {"K", k}});
  }
  r.records.push_back({{"check", "family"}, {"pairs", f.pair_count()}, {"weight_sum", num(wsum)}});
  return r;
}

ExperimentReport exp_addition(const ExperimentParams& p) {
  require_qubits(p, 1, 3);
  auto r = new_report("addition", p);
  const unsigned n = p.qubits;
  const std::size_t d = std::size_t{1} << n;
  const auto mu = universal_matrix(n, p.budget);
  const auto mu2 = universal_matrix(2 * n, p.budget);
  // Tr M_{mu2 rho} = Tr (Tr_A mu2) rho: the marginal on the rho factor.
  const ComplexMatrix marginal = partial_trace(mu2->matrix(), d, d, Subsystem::first);
  const int c_marg = std::max(0, domination_bits(marginal, mu->matrix()));
  r.add_constant("overhead", {{"mixture", 1.0}, {"ceiling", 1.0}});
  r.add_constant("overhead_with_mu_n", {{"mixture", 1.0}, {"ceiling", 1.0}, {"marginal domination", double(c_marg)}});

  std::vector<std::pair<std::string, RationalMatrix>> rhos;
  rhos.push_back({"zero", exact_basis_projector(n, 0)});
  rhos.push_back({"last-basis", exact_basis_projector(n, d - 1)});
  rhos.push_back({"maximally-mixed", exact_maximally_mixed(n)});
  {
    const RationalMatrix rot = rational_rotation(n);
    rhos.push_back({"rotated-zero", exact_conjugate(rot, exact_basis_projector(n, 0))});
  }
  auto rng = rng_stream(p.seed, 3);
  for (int k = 0; k < 4; ++k) rhos.push_back({"elementary-" + std::to_string(k), random_elementary_density(n, rng)});

  std::vector<std::pair<std::string, ComplexMatrix>> sigmas;
  sigmas.push_back({"zero", PureState::basis(n, 0).projector()});
  sigmas.push_back({"maximally-mixed", maximally_mixed(n)});
  for (unsigned k = 0; k < 6; ++k) sigmas.push_back({"random-" + std::to_string(k), random_density(n, rng)});

  ConditionRegistry registry;
  double worst_overhead = -1e9;
  for (const auto& [rname, rx] : rhos) {
    const ComplexMatrix rho = rx.to_complex();
    const ComplexMatrix m = m_reduce(mu2->matrix(), rho, d);
    const Entropy hm = Entropy::from_trace(trace_product(marginal, rho).real());
    const Entropy hn = entropy(rho, mu->matrix());
    const EncodableObject key = EncodableObject::pair({ElementaryMatrix::from_rational(rx)},
                                                      {Natural{static_cast<std::uint64_t>(hm.value)}});
    // H is a ceiling, so 2^H Tr M lies in [1, 2); one bit is given back.
    const ComplexMatrix kappa = hermitize(m * Complex(std::ldexp(1.0, hm.value - 1)));
    registry.add(key, kappa, 1.0);
    const SemiDensityMatrix cond = conditional_mu(key, registry, *mu);
    if (rname == "maximally-mixed") {
      const double lhs = m.trace().real();
      const double rhs = std::ldexp(mu2->trace(), -static_cast<int>(n));
      if (std::abs(lhs - rhs) > 1e-10) r.fail("Tr M_{mu rho} != 2^-n Tr mu_2n for rho = 2^-n I");
    }
    for (const auto& [sname, sigma] : sigmas) {
      const Entropy hc = entropy(sigma, cond.matrix());
      const Entropy hj = entropy(tensor(sigma, rho), mu2->matrix());
      const double resid = std::abs(trace_product(m, sigma).real() - trace_product(mu2->matrix(), tensor(sigma, rho)).real());
      if (resid > 1e-9) r.fail("trace identity residual " + std::to_string(resid));
      const std::string label = rname + "/" + sname;
      if (hm.infinite || hc.infinite || hj.infinite) {
        r.fail(label + ": infinite entropy");
        continue;
      }
      const double overhead = hm.value + hc.value - hj.value;
      worst_overhead = std::max(worst_overhead, overhead);
      r.check_le(overhead, r.measured_constants["overhead"], label + ": H_m(rho) + H(sigma/key) <= H(sigma x rho) + 2");
      r.check_le(hn.value + hc.value - hj.value, r.measured_constants["overhead_with_mu_n"],
                 label + ": H(rho) + H(sigma/key) <= H(sigma x rho) + 2 + c");
      r.records.push_back({{"check", "addition"}, {"rho", rname}, {"sigma", sname}, {"H_rho_marginal", hm.value},
                           {"H_rho", hn.value}, {"H_sigma_given_key", hc.value}, {"H_joint", hj.value},
                           {"overhead", overhead}, {"slack", 2.0 - overhead}, {"trace_identity_residual", num(resid)}});
    }
  }
  r.measured_constants["worst_overhead"] = worst_overhead;

  // Trace identity on random instances.
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix rho = random_density(n, rng);
    const ComplexMatrix sigma = random_density(n, rng);
    const double resid = std::abs(trace_product(m_reduce(mu2->matrix(), rho, d), sigma).real() -
                                  trace_product(mu2->matrix(), tensor(sigma, rho)).real());
    worst = std::max(worst, resid);
  }
  r.check_le(worst, 1e-9, "trace identity residual over 100 random pairs");
  r.records.push_back({{"check", "trace-identity"}, {"instances", 100}, {"max_residual", num(worst)}});
  return r;
}

ExperimentReport exp_conservation(const ExperimentParams& p) {
  require_qubits(p, 1, 2);
  auto r = new_report("conservation", p);
  const unsigned n = p.qubits;
  const std::size_t d = std::size_t{1} << n;
  const auto mu = universal_matrix(n, p.budget);
  const auto mu2 = universal_matrix(2 * n, p.budget);
  auto rng = rng_stream(p.seed, 4);
  const auto battery = unitary_battery(n);

  // Randomness deficiency under unitaries: |d(U s U*|U r U*) - d(s|r)| <= c_U.
  {
    std::vector<std::tuple<RationalMatrix, ComplexMatrix>> inst;
    for (unsigned k = 0; k < p.instances; ++k) inst.emplace_back(random_elementary_density(n, rng), random_density(n, rng));
    for (const auto& u : battery) {
      const double c_u = transform_cost(u.exact, p.charge_transforms);
      const ComplexMatrix uc = u.exact.to_complex();
      const ComplexMatrix ua = uc.adjoint();
      r.add_constant("deficiency/unitary/" + u.name, {{"transform " + u.name, c_u}});
      for (unsigned k = 0; k < inst.size(); ++k) {
        const auto& [rho_x, sigma] = inst[k];
        const RationalMatrix rho2_x = exact_conjugate(u.exact, rho_x);
        const ComplexMatrix rho = rho_x.to_complex();
        const ComplexMatrix rho2 = rho2_x.to_complex();
        const TestFamily f1 = plain_family(rho, *mu, p, matrix_complexity(rho_x));
        const TestFamily f2 = plain_family(rho2, *mu, p, matrix_complexity(rho2_x));
        const TestFamily lf = mix(f2, transport_conjugate(f1, ua, c_u, u.name + "^dagger"), "closed");
        const TestFamily rf = mix(f1, transport_conjugate(f2, uc, c_u, u.name), "closed");
        const double dl = deficiency(conjugate(uc, sigma), lf).value;
        const double dr = deficiency(sigma, rf).value;
        r.check_le(lf.max_admission(rho2), 1.0 + tol::admission, "admission after conjugation");
        r.check_le(rf.max_admission(rho), 1.0 + tol::admission, "admission after conjugation");
        const std::string label = "deficiency/unitary/" + u.name + "/" + std::to_string(k);
        r.check_le(dr - c_u, dl, label + ": d(UsU*|UrU*) >= d(s|r) - c_U");
        r.check_le(dl - c_u, dr, label + ": d(s|r) >= d(UsU*|UrU*) - c_U");
        if (u.name == "identity" && dl != dr) r.fail(label + ": identity transport changed the score");
        r.records.push_back({{"check", "deficiency-unitary"}, {"unitary", u.name}, {"instance", k},
                             {"d_transformed", num(dl)}, {"d_original", num(dr)}, {"c_U", c_u},
                             {"slack", num(c_u - std::abs(dl - dr))}});
      }
    }
  }

  // Randomness deficiency under partial trace over the last n of 2n qubits.
  {
    const double c_ext = static_cast<double>(nat_length(n));
    const double c = r.add_constant("deficiency/partial-trace", {{"mixture", 1.0}, {"extend", c_ext}});
    double adj = 0.0;
    for (unsigned k = 0; k < p.instances; ++k) {
      const RationalMatrix rho_x = random_elementary_density(2 * n, rng);
      const RationalMatrix rho_small_x = exact_partial_trace_second(rho_x, d, d);
      const ComplexMatrix rho = rho_x.to_complex();
      const ComplexMatrix rho_small = rho_small_x.to_complex();
      const ComplexMatrix sigma = random_density(2 * n, rng);
      const ComplexMatrix sigma_small = partial_trace(sigma, d, d, Subsystem::second);
      const TestFamily fs = plain_family(rho_small, *mu, p, matrix_complexity(rho_small_x));
      const TestFamily fb = plain_family(rho, *mu2, p, matrix_complexity(rho_x));
      const TestFamily ext = transport_extend(fs, n);
      const TestFamily rf = mix(fb, ext, "closed");
      r.check_le(rf.max_admission(rho), 1.0 + tol::admission, "admission after extension");
      for (std::size_t t = 0; t < std::min<std::size_t>(3, fs.tests.size()); ++t) {
        adj = std::max(adj, std::abs(trace_product(ext.tests[t].matrix, sigma).real() -
                                     trace_product(fs.tests[t].matrix, sigma_small).real()));
      }
      const double dl = deficiency(sigma_small, fs).value;
      const double dr = deficiency(sigma, rf).value;
      r.check_le(dl, dr + c, "deficiency/partial-trace/" + std::to_string(k) + ": d(Tr s|Tr r) <= d(s|r) + c");
      r.records.push_back({{"check", "deficiency-partial-trace"}, {"instance", k}, {"d_reduced", num(dl)},
                           {"d_full", num(dr)}, {"constant", c}, {"slack", num(dr + c - dl)}});
    }
    r.check_le(adj, 1e-10, "partial-trace adjunction Tr (t x I) s = Tr t Tr_m s");
  }

  // Mutual information under unitaries on the first argument.
  const ProductFamily fn = product_family(*mu, p);
  {
    std::vector<std::pair<ComplexMatrix, ComplexMatrix>> inst;
    for (unsigned k = 0; k < p.instances; ++k) inst.emplace_back(random_density(n, rng), random_density(n, rng));
    for (const auto& u : battery) {
      const double c_u = transform_cost(u.exact, p.charge_transforms);
      const ComplexMatrix uc = u.exact.to_complex();
      const ComplexMatrix ua = uc.adjoint();
      const int d_fwd = domination_bits(conjugate(ua, mu->matrix()), mu->matrix());
      const int d_bwd = domination_bits(conjugate(uc, mu->matrix()), mu->matrix());
      const double c_fwd = r.add_constant("information/unitary/" + u.name + "/forward",
                                          {{"transform " + u.name, c_u}, {"domination U* mu U", double(d_fwd)}});
      const double c_bwd = r.add_constant("information/unitary/" + u.name + "/backward",
                                          {{"transform " + u.name, c_u}, {"domination U mu U*", double(d_bwd)}});
      const ProductFamily lf = mix(fn, map_blocks(fn, "conj", fn.dim, [&](const ProductBlock& b) {
                                     return conjugate_left(b, uc, d_fwd, c_u, u.name);
                                   }), "closed");
      const ProductFamily rf = mix(fn, map_blocks(fn, "conj", fn.dim, [&](const ProductBlock& b) {
                                     return conjugate_left(b, ua, d_bwd, c_u, u.name + "^dagger");
                                   }), "closed");
      r.check_le(lf.max_admission(mu->matrix(), mu->matrix()), 1.0 + tol::admission, "admission after conjugation");
      r.check_le(rf.max_admission(mu->matrix(), mu->matrix()), 1.0 + tol::admission, "admission after conjugation");
      for (unsigned k = 0; k < inst.size(); ++k) {
        const auto& [sigma, rho] = inst[k];
        const double il = mutual_information(conjugate(uc, sigma), rho, lf).value;
        const double ir = mutual_information(sigma, rho, rf).value;
        const std::string label = "information/unitary/" + u.name + "/" + std::to_string(k);
        r.check_le(ir - c_fwd, il, label + ": I(UsU*:r) >= I(s:r) - c");
        r.check_le(il - c_bwd, ir, label + ": I(s:r) >= I(UsU*:r) - c");
        if (u.name == "identity" && il != ir) r.fail(label + ": identity transport changed the score");
        r.records.push_back({{"check", "information-unitary"}, {"unitary", u.name}, {"instance", k},
                             {"I_transformed", num(il)}, {"I_original", num(ir)},
                             {"slack_forward", num(il - ir + c_fwd)}, {"slack_backward", num(ir - il + c_bwd)}});
      }
    }
  }

  // Mutual information under partial trace, and the two-sided Tr_A / Tr_B bound.
  {
    const ProductFamily f2 = product_family(*mu2, p);
    const ComplexMatrix keep_first = partial_trace(mu2->matrix(), d, d, Subsystem::second);
    const ComplexMatrix keep_second = partial_trace(mu2->matrix(), d, d, Subsystem::first);
    const int d_first = domination_bits(keep_first, mu->matrix());
    const int d_second = domination_bits(keep_second, mu->matrix());
    const double c_ext = static_cast<double>(nat_length(n));
    const double c_pt = r.add_constant("information/partial-trace",
                                       {{"mixture", 1.0}, {"extend", c_ext}, {"domination, both factors", 2.0 * d_first}});
    const double c_cor = r.add_constant("information/two-sided",
                                        {{"mixture", 1.0}, {"extend", c_ext}, {"domination Tr_B", double(d_first)},
                                         {"domination Tr_A", double(d_second)}});
    const ProductFamily ext = mix(f2, map_blocks(fn, "extend", f2.dim, [&](const ProductBlock& b) {
                                    return extend_both(b, n, d_first);
                                  }), "closed");
    const ProductFamily cross = mix(f2, map_blocks(fn, "cross", f2.dim, [&](const ProductBlock& b) {
                                      return cross_extend(b, n, d_first, d_second);
                                    }), "closed");
    r.check_le(ext.max_admission(mu2->matrix(), mu2->matrix()), 1.0 + tol::admission, "admission after extension");
    r.check_le(cross.max_admission(mu2->matrix(), mu2->matrix()), 1.0 + tol::admission, "admission after extension");
    for (unsigned k = 0; k < p.instances; ++k) {
      const ComplexMatrix sigma = random_density(2 * n, rng);
      const ComplexMatrix rho = random_density(2 * n, rng);
      const ComplexMatrix s_first = partial_trace(sigma, d, d, Subsystem::second);
      const ComplexMatrix s_second = partial_trace(sigma, d, d, Subsystem::first);
      const ComplexMatrix r_first = partial_trace(rho, d, d, Subsystem::second);
      const double il = mutual_information(s_first, r_first, fn).value;
      const double ir = mutual_information(sigma, rho, ext).value;
      r.check_le(il, ir + c_pt, "information/partial-trace/" + std::to_string(k));
      // Tr_B s is the first factor, Tr_A s the second; swap symmetry of the
      // default family makes the order immaterial.
      const double cl = mutual_information(s_first, s_second, fn).value;
      const double cl_swapped = mutual_information(s_second, s_first, fn).value;
      if (cl != cl_swapped) r.fail("two-sided: default family not swap symmetric");
      const double cr = mutual_information(sigma, sigma, cross).value;
      r.check_le(cl, cr + c_cor, "information/two-sided/" + std::to_string(k));
      r.records.push_back({{"check", "information-partial-trace"}, {"instance", k}, {"I_reduced", num(il)},
                           {"I_full", num(ir)}, {"slack", num(ir + c_pt - il)}, {"I_TrB_TrA", num(cl)},
                           {"I_sigma_sigma", num(cr)}, {"two_sided_slack", num(cr + c_cor - cl)}});
    }
  }
  return r;
}

ExperimentReport exp_selfinfo(const ExperimentParams& p) {
  require_qubits(p, 1, 4);
  auto r = new_report("selfinfo", p);
  const unsigned n = p.qubits;
  const std::size_t d = std::size_t{1} << n;
  const auto mu = universal_matrix(n, p.budget);
  const double tr = mu->trace();
  const ComplexMatrix mixed = maximally_mixed(n);

  // (1)
  const Entropy h = entropy(mixed, mu->matrix());
  const int expected = static_cast<int>(n) + Entropy::from_trace(tr).value;
  if (h.infinite || h.value != expected) r.fail("(1) H(2^-n I) != n + ceil(-log2 Tr mu)");
  r.records.push_back({{"check", "(1) entropy of 2^-n I"}, {"entropy", entropy_json(h)}, {"expected", expected}});

  // (2)
  const ProductFamily f = product_family(*mu, p);
  const double info_mixed = mutual_information(mixed, mixed, f).value;
  const double k_mixed = static_cast<double>(matrix_complexity(exact_maximally_mixed(n)));
  const double dm = domination_exponent(mixed, mu->matrix());
  const double c2 = r.add_constant("c_family", {{"D(2^-n I) - K(2^-n I), first", std::max(0.0, dm - k_mixed)},
                                                {"D(2^-n I) - K(2^-n I), second", std::max(0.0, dm - k_mixed)},
                                                {"log2 weight sum", std::max(0.0, std::log2(f.weight_sum()))}});
  r.check_le(info_mixed, 2.0 * k_mixed + c2, "(2) I(2^-n I : 2^-n I) <= 2 K(2^-n I) + c");
  r.records.push_back({{"check", "(2) information of 2^-n I"}, {"info", num(info_mixed)}, {"K", k_mixed},
                       {"D", num(dm)}, {"bound", num(2.0 * k_mixed + c2)}});

  // (3) first moment, and invariance under an elementary unitary.
  const std::uint64_t samples = p.samples ? p.samples : 20000;
  HaarSampler haar(n, p.seed);
  const ComplexMatrix rot = rational_rotation(n).to_complex();
  const ComplexMatrix mu_rot = conjugate(rot.adjoint(), mu->matrix());  // Tr mu U psi psi* U* = <psi|U* mu U|psi>
  std::vector<double> first, zero_overlap, fourth, diff, expo;
  first.reserve(samples);
  // Fixed X for the second-moment check: five random densities on 2n qubits.
  auto xrng = rng_stream(p.seed, 5);
  std::vector<ComplexMatrix> xs;
  for (int k = 0; k < 5; ++k) xs.push_back(random_density(2 * n, xrng));
  std::vector<std::vector<double>> xvals(xs.size());
  const auto phi = haar.sample(UINT64_MAX);
  for (std::uint64_t k = 0; k < samples; ++k) {
    const PureState psi = haar.sample(k);
    const auto amps = psi.amplitudes();
    const double t = expectation(mu->matrix(), amps);
    first.push_back(t);
    diff.push_back(expectation(mu_rot, amps) - t);
    zero_overlap.push_back(std::norm(amps[0]));
    Complex ov{};
    for (std::size_t i = 0; i < d; ++i) ov += std::conj(phi[i]) * amps[i];
    fourth.push_back(std::norm(ov) * std::norm(ov));
    const PureState pp = tensor(psi, psi);
    for (std::size_t x = 0; x < xs.size(); ++x) xvals[x].push_back(expectation(xs[x], pp.amplitudes()));
    const ComplexMatrix proj = psi.projector();
    expo.push_back(std::exp2(mutual_information(proj, proj, f).value));
  }
  const double target = std::ldexp(tr, -static_cast<int>(n));
  mc_band(r, "(3) mean Tr mu psi", mc_stat(first), target, target);
  mc_band(r, "(3) mean |<0|psi>|^2", mc_stat(zero_overlap), 1.0 / d, 1.0 / d);
  mc_band(r, "mean |<phi|psi>|^4", mc_stat(fourth), 2.0 / (d * (d + 1.0)), 2.0 / (d * (d + 1.0)));
  mc_band(r, "unitary invariance: mean Tr mu (U psi U*) - Tr mu psi", mc_stat(diff), 0.0, 0.0);

  // Symmetric projector P = (I + SWAP)/2 on 2n qubits.
  ComplexMatrix sym(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      sym(i * d + j, i * d + j) += 0.5;
      sym(j * d + i, i * d + j) += 0.5;
    }
  const double binom = d * (d + 1.0) / 2.0;
  for (std::size_t x = 0; x < xs.size(); ++x) {
    const double pred = trace_product(xs[x], sym).real() / binom;
    mc_band(r, "(4) second moment Tr X psi psi, X #" + std::to_string(x), mc_stat(xvals[x]), pred, pred);
  }

  // (4) mean of 2^I(psi:psi) against the exact symmetric-subspace value.
  const double exact = symmetric_projector_value(f);
  const McStat es = mc_stat(expo);
  mc_band(r, "(4) mean 2^I(psi:psi)", es, 0.0, exact);
  r.measured_constants["mean_exp_info"] = es.mean;
  r.measured_constants["symmetric_projector_value"] = exact;
  r.records.push_back({{"check", "(4) information of Haar states"}, {"exact", num(exact)}, {"mean", num(es.mean)},
                       {"standard_error", num(es.se)}, {"log2_exact", num(std::log2(exact))}});
  return r;
}

ExperimentReport exp_povm(const ExperimentParams& p) {
  require_qubits(p, 1, 3);
  auto r = new_report("povm", p);
  const unsigned n = p.qubits;
  const auto mu = universal_matrix(n, p.budget);
  const std::vector<std::pair<std::string, Povm>> battery = {
      {"computational", Povm::computational(n)}, {"rotated", Povm::rotated(n)}, {"coarse-three", Povm::coarse_three(n)}};
  std::vector<double> costs;
  for (const auto& [name, e] : battery) {
    costs.push_back(p.charge_transforms ? static_cast<double>(e.code_length()) : 0.0);
    r.add_constant("deficiency/" + name, {{"mixture", 1.0}, {"povm " + name, costs.back()}});
  }
  // Computational outcomes are read off the basis block; the others get
  // their own relativization blocks.
  std::vector<RelativizedPovm> rel;
  for (std::size_t k = 1; k < battery.size(); ++k) rel.push_back({battery[k].first, &battery[k].second, costs[k]});
  const ProductFamily f = product_family(*mu, p, rel);
  auto block_of = [](const std::string& name) { return name == "computational" ? std::string("basis") : "povm:" + name; };

  auto rng = rng_stream(p.seed, 6);
  struct Pair {
    std::string label;
    RationalMatrix rho_x;
    ComplexMatrix sigma;
  };
  std::vector<Pair> pairs;
  {
    const RationalMatrix z = exact_basis_projector(n, 0);
    pairs.push_back({"zero/zero", z, z.to_complex()});
  }
  for (unsigned k = 0; k < p.instances; ++k) {
    RationalMatrix rx = random_elementary_density(n, rng);
    pairs.push_back({"random-" + std::to_string(k), rx, random_density(n, rng)});
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& pr = pairs[k];
    const ComplexMatrix rho = pr.rho_x.to_complex();
    const TestFamily fr = plain_family(rho, *mu, p, matrix_complexity(pr.rho_x));
    const double info = mutual_information(pr.sigma, rho, f).value;
    for (std::size_t b = 0; b < battery.size(); ++b) {
      const auto& [name, e] = battery[b];
      const auto ps = apply_povm(e, pr.sigma);
      const auto pp = apply_povm(e, rho);
      const double dl = classical_deficiency(ps, pp);
      TestFamily single;
      single.id = "povm:" + name;
      single.dim = fr.dim;
      single.tests.push_back(transport_povm(e, rho, costs[b]));
      const TestFamily rf = mix(fr, single, "closed");
      r.check_le(rf.max_admission(rho), 1.0 + tol::admission, "admission of the POVM test");
      const double dr = deficiency(pr.sigma, rf).value;
      const double c = r.measured_constants["deficiency/" + name];
      r.check_le(dl, dr + c, pr.label + "/" + name + ": d(E s|E r) <= d(s|r) + c_E");
      if (k == 0) {
        // sigma = rho: both sides non-positive.
        r.check_le(dl, 0.0, "d(E rho|E rho) <= 0");
        r.check_le(deficiency(rho, fr).value, 0.0, "d(rho|rho) <= 0");
      }
      int held = 0, dropped = 0, total = 0;
      double min_slack = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j) {
          const auto mb = measurement_info_bound(e, pr.sigma, rho, i, j, f, block_of(name), info);
          ++total;
          if (mb.dropped) {
            ++dropped;
            continue;
          }
          if (mb.holds) ++held;
          else r.fail(pr.label + "/" + name + ": two-measurement bound fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
          min_slack = std::min(min_slack, mb.rhs + mb.constant - mb.lhs);
        }
      const auto sb = measurement_sum_bound(e, pr.sigma, rho, f, block_of(name), info);
      if (!sb.holds) r.fail(pr.label + "/" + name + ": summed two-measurement bound fails");
      r.records.push_back({{"check", "povm"}, {"pair", pr.label}, {"povm", name}, {"d_classical", num(dl)},
                           {"d_quantum", num(dr)}, {"deficiency_slack", num(dr + c - dl)}, {"info", num(info)},
                           {"pair_bounds_held", held}, {"pair_bounds_dropped", dropped}, {"pair_bounds", total},
                           {"pair_min_slack", num(min_slack)}, {"sum_lhs", num(sb.lhs)},
                           {"sum_constant", sb.constant}, {"sum_slack", num(sb.rhs + sb.constant - sb.lhs)}});
    }
  }
  return r;
}

ExperimentReport exp_nocloning(const ExperimentParams& p) {
  require_qubits(p, 1, 3);
  auto r = new_report("no-cloning", p);
  const unsigned n = p.qubits;
  const std::size_t d = std::size_t{1} << n;
  const auto mu = universal_matrix(n, p.budget);
  const ProductFamily fn = product_family(*mu, p);

  // (a) Basis states are copied, and so is their information.
  {
    const ProductBlock* basis = fn.find("basis");
    double deficit = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      deficit = std::max(deficit, static_cast<double>(nat_length(i)) - basis->outcome_scales[i]);
    const double c = r.add_constant("c_basis", {{"block prefix", 2.0}, {"index-pair tag", 1.0},
                                                {"scale deficit, both factors", 2.0 * deficit}});
    const UnitaryTransform copy = copy_unitary(n);
    for (std::size_t i = 0; i < d; ++i) {
      const auto out = clone_pipeline(PureState::basis(n, i), copy);
      const double info = mutual_information(out.first, out.second, fn).value;
      const double k = static_cast<double>(nat_length(i));
      r.check_le(k - c, info, "basis " + std::to_string(i) + ": I(phi:phi') >= K(i) - c");
      r.records.push_back({{"check", "basis-copy"}, {"index", i}, {"info", num(info)}, {"K", k}, {"slack", num(info - k + c)}});
    }
  }

  const std::uint64_t samples = p.samples ? p.samples : (n <= 2 ? 500 : 0);
  if (samples == 0) {
    r.notes.push_back("Haar chain skipped: pass --samples to run it at this size");
    return r;
  }

  // (b) The chain I(phi:phi') <= I(J:J) + c1 <= I(psi0:psi0) + c1 + c2 <= I(psi:psi) + c.
  const auto mu2 = universal_matrix(2 * n, p.budget);
  const ProductFamily f2 = product_family(*mu2, p);
  const ComplexMatrix keep_first = partial_trace(mu2->matrix(), d, d, Subsystem::second);
  const ComplexMatrix keep_second = partial_trace(mu2->matrix(), d, d, Subsystem::first);
  const int d_first = domination_bits(keep_first, mu->matrix());
  const int d_second = domination_bits(keep_second, mu->matrix());
  const ComplexMatrix zero = PureState::basis(n, 0).projector();
  const RationalMatrix zero_x = exact_basis_projector(n, 0);
  const std::size_t k_zero = matrix_complexity(zero_x);
  const int d_zero = domination_bits(tensor(mu->matrix(), zero), mu2->matrix());
  const ProductFamily g1 = mix(f2, map_blocks(fn, "cross", f2.dim, [&](const ProductBlock& b) {
                                 return cross_extend(b, n, d_first, d_second);
                               }), "closed");
  const double c_ext = static_cast<double>(nat_length(n));
  const double c1 = r.add_constant("c1", {{"mixture", 1.0}, {"extend", c_ext}, {"domination Tr_B", double(d_first)},
                                          {"domination Tr_A", double(d_second)}});

  struct Transform {
    std::string name;
    RationalMatrix exact;
  };
  std::vector<Transform> transforms;
  transforms.push_back({"copy", copy_unitary_exact(n)});
  transforms.push_back({"identity", RationalMatrix::identity(d * d)});
  {
    const RationalMatrix rot = rational_rotation(n);
    transforms.push_back({"scrambler", copy_unitary_exact(n) * tensor(rot, rot)});
  }

  HaarSampler haar(n, p.seed);
  std::vector<PureState> states;
  for (std::uint64_t k = 0; k < samples; ++k) states.push_back(haar.sample(k));
  std::vector<double> self_info;
  for (const auto& psi : states) {
    const ComplexMatrix proj = psi.projector();
    self_info.push_back(mutual_information(proj, proj, fn).value);
  }

  for (const auto& t : transforms) {
    const ComplexMatrix cm = t.exact.to_complex();
    const UnitaryTransform cu(cm);
    const double cost = static_cast<double>(matrix_complexity(t.exact));
    const double c_c = p.charge_transforms ? cost : 0.0;
    // Tests for J = C psi0 C* become tests for psi0 via A -> C* A C.
    const int d_c = domination_bits(conjugate(cm, mu2->matrix()), mu2->matrix());
    const ProductFamily g2 = mix(f2, map_blocks(g1, "conj", f2.dim, [&](const ProductBlock& b) {
                                   return conjugate_both(b, cm.adjoint(), d_c, c_c, t.name);
                                 }), "closed");
    const ProductFamily g3 = mix(fn, map_blocks(g2, "reduce", fn.dim, [&](const ProductBlock& b) {
                                   return m_reduce_block(b, zero, zero, d_zero, d_zero, k_zero, k_zero);
                                 }), "closed");
    r.check_le(g2.max_admission(mu2->matrix(), mu2->matrix()), 1.0 + tol::admission, t.name + ": admission of G2");
    r.check_le(g3.max_admission(mu->matrix(), mu->matrix()), 1.0 + tol::admission, t.name + ": admission of G3");
    const double c2 = r.add_constant("c2/" + t.name, {{"mixture", 1.0}, {"transform " + t.name, c_c},
                                                      {"domination, both factors", 2.0 * d_c}});
    const double c3 = r.add_constant("c3/" + t.name, {{"mixture", 1.0}, {"K(nu) + K(xi)", 2.0 * k_zero},
                                                      {"reduction tag", kReductionTagBits},
                                                      {"domination, both factors", 2.0 * d_zero}});
    const double chain = r.add_constant("c_chain/" + t.name, {{"c1", c1}, {"c2", c2}, {"c3", c3}});
    r.add_constant("c_chain_free/" + t.name, {{"c1", c1}, {"c2 without transform cost", c2 - c_c}, {"c3", c3}});
    r.add_constant("c_chain_charged/" + t.name, {{"c1", c1}, {"c2 with transform cost", c2 - c_c + cost}, {"c3", c3}});

    unsigned violations = 0;
    for (std::size_t k = 0; k < states.size(); ++k) {
      const auto out = clone_pipeline(states[k], cu);
      const ComplexMatrix psi0 = tensor(states[k].projector(), zero);
      const double i_out = mutual_information(out.first, out.second, fn).value;
      const double i_joint = mutual_information(out.joint, out.joint, g1).value;
      const double i_input = mutual_information(psi0, psi0, g2).value;
      const ComplexMatrix proj = states[k].projector();
      const double i_psi = mutual_information(proj, proj, g3).value;
      const bool ok1 = i_out <= i_joint + c1 + 1e-9;
      const bool ok2 = i_joint <= i_input + c2 + 1e-9;
      const bool ok3 = i_input <= i_psi + c3 + 1e-9;
      const bool ok = i_out <= i_psi + chain + 1e-9;
      if (!(ok1 && ok2 && ok3 && ok)) {
        ++violations;
        r.fail(t.name + "/" + std::to_string(k) + ": chain inequality fails");
      }
      r.records.push_back({{"check", "chain"}, {"transform", t.name}, {"sample", k}, {"I_out", num(i_out)},
                           {"I_joint", num(i_joint)}, {"I_input", num(i_input)}, {"I_psi", num(i_psi)},
                           {"I_psi_default", num(self_info[k])}, {"slack", num(i_psi + chain - i_out)}});
    }
    r.records.push_back({{"check", "chain-summary"}, {"transform", t.name}, {"samples", states.size()},
                         {"violations", violations}, {"c_chain", chain}});
  }

  // (c) Distribution of I(psi:psi) under the default family.
  std::vector<double> sorted = self_info;
  std::sort(sorted.begin(), sorted.end());
  const McStat s = mc_stat(self_info);
  auto q = [&](double f) { return sorted[static_cast<std::size_t>(f * static_cast<double>(sorted.size() - 1))]; };
  r.records.push_back({{"check", "self-information-distribution"}, {"samples", sorted.size()}, {"mean", num(s.mean)},
                       {"standard_error", num(s.se)}, {"min", num(sorted.front())}, {"q25", num(q(0.25))},
                       {"median", num(q(0.5))}, {"q75", num(q(0.75))}, {"max", num(sorted.back())}});
  return r;
}

ExperimentReport explore_conjectures(const ExperimentParams& p) {
  require_qubits(p, 1, 3);
  auto r = new_report("explore-conjectures", p);
  r.has_verdict = false;
  const unsigned n = p.qubits;
  const auto mu = universal_matrix(n, p.budget);
  const ProductFamily f = product_family(*mu, p);
  const ComplexMatrix mu_normalized = mu->matrix() * Complex(1.0 / mu->trace());
  const TestFamily fm = plain_family(mu_normalized, *mu, p, std::nullopt);
  const std::uint64_t samples = p.samples ? p.samples : 200;
  HaarSampler haar(n, p.seed);
  for (std::uint64_t k = 0; k < samples; ++k) {
    const ComplexMatrix a = haar.sample(2 * k).projector();
    const ComplexMatrix b = haar.sample(2 * k + 1).projector();
    r.records.push_back({{"sample", k},
                         {"I_self", num(mutual_information(a, a, f).value)},
                         {"I_cross", num(mutual_information(a, b, f).value)},
                         {"d_against_normalized_mu", num(deficiency(a, fm).value)},
                         {"sqrt_2n", num(std::sqrt(2.0 * n))}});
  }
  r.notes.push_back("data only: the open questions are not asserted");
  return r;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"build",        "entropy",      "deficiency", "mutual-info",
                                                 "addition",     "conservation", "selfinfo",   "povm",
                                                 "no-cloning",   "explore-conjectures"};
  return names;
}

ExperimentReport run_experiment(const std::string& name, const ExperimentParams& params) {
  static const std::map<std::string, std::function<ExperimentReport(const ExperimentParams&)>> table = {
      {"build", exp_mu_build},         {"entropy", exp_entropy},
      {"deficiency", exp_deficiency},  {"mutual-info", exp_mutual_info},
      {"addition", exp_addition},      {"conservation", exp_conservation},
      {"selfinfo", exp_selfinfo},      {"povm", exp_povm},
      {"no-cloning", exp_nocloning},   {"explore-conjectures", explore_conjectures}};
  auto it = table.find(name);
  if (it == table.end()) fail(ErrorCode::invalid_argument, "unknown experiment '" + name + "'");
  return it->second(params);
}

}  // namespace qgacs
