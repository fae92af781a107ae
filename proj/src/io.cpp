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

#include "qgacs/io.hpp"

#include <fstream>
#include <sstream>

#include "qgacs/codec.hpp"
#include "qgacs/error.hpp"

namespace qgacs {

using json = nlohmann::json;

namespace {

std::size_t checked_dim(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
    fail(ErrorCode::io, "matrix JSON needs 'dim' and 'rows'");
  }
  const std::size_t d = j.at("dim").get<std::size_t>();
  const json& rows = j.at("rows");
  if (!rows.is_array() || rows.size() != d) fail(ErrorCode::dimension_mismatch, "row count differs from dim");
  for (const auto& row : rows)
    if (!row.is_array() || row.size() != d) fail(ErrorCode::dimension_mismatch, "row length differs from dim");
  return d;
}

Rational rational_at(const json& e, std::size_t k) {
  const std::int64_t num = e.at(k).get<std::int64_t>();
  const std::int64_t den = e.at(k + 1).get<std::int64_t>();
  if (den <= 0) fail(ErrorCode::io, "denominator must be positive");
  return Rational(num, den);
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::dimension_mismatch, "matrix must be square");
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"rows", std::move(rows)}};
}

json matrix_to_json(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::dimension_mismatch, "matrix must be square");
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& z = m(i, j);
      row.push_back({z.re.num(), z.re.den(), z.im.num(), z.im.den()});
    }
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"exact", true}, {"rows", std::move(rows)}};
}

bool is_exact_matrix_json(const json& j) {
  if (j.contains("exact")) return j.at("exact").get<bool>();
  // Infer from the entry width.
  const json& rows = j.at("rows");
  return !rows.empty() && !rows.at(0).empty() && rows.at(0).at(0).size() == 4;
}

RationalMatrix rational_matrix_from_json(const json& j) {
  try {
    const std::size_t d = checked_dim(j);
    RationalMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const json& e = j.at("rows").at(i).at(k);
        if (!e.is_array() || e.size() != 4) fail(ErrorCode::io, "exact entries are [num_re, den_re, num_im, den_im]");
        m(i, k) = {rational_at(e, 0), rational_at(e, 2)};
      }
    return m;
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("malformed matrix JSON: ") + e.what());
  }
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    if (is_exact_matrix_json(j)) return rational_matrix_from_json(j).to_complex();
    const std::size_t d = checked_dim(j);
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const json& e = j.at("rows").at(i).at(k);
        if (!e.is_array() || e.size() != 2) fail(ErrorCode::io, "entries are [re, im]");
        m(i, k) = {e.at(0).get<double>(), e.at(1).get<double>()};
      }
    if (!m.all_finite()) fail(ErrorCode::io, "matrix has non-finite entries");
    return m;
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("malformed matrix JSON: ") + e.what());
  }
}

json mu_to_json(const UniversalMatrix& mu) {
  json ledger = json::array();
  for (const auto& s : mu.ledger()) {
    json entries = json::array();
    for (const auto& [idx, z] : s.vector.entries) entries.push_back({idx, z.re.num(), z.re.den(), z.im.num(), z.im.den()});
    ledger.push_back({{"code", s.code.to_hex()}, {"length", s.code.size()}, {"weight", s.weight()}, {"entries", entries}});
  }
  return {{"format", "qgacs-mu"},
          {"version", 1},
          {"qubits", mu.qubits()},
          {"budget", mu.budget()},
          {"trace", mu.trace()},
          {"ledger", std::move(ledger)},
          {"matrix", matrix_to_json(mu.matrix())}};
}

UniversalMatrix mu_from_json(const json& j) {
  try {
    if (j.value("format", "") != "qgacs-mu") fail(ErrorCode::io, "not a mu file");
    const unsigned n = j.at("qubits").get<unsigned>();
    const unsigned budget = j.at("budget").get<unsigned>();
    if (n < 1 || n > 10) fail(ErrorCode::io, "qubit count out of range");
    std::vector<ElementaryState> ledger;
    ledger.reserve(j.at("ledger").size());
    for (const auto& e : j.at("ledger")) {
      const Code code = Code::from_hex(e.at("code").get<std::string>(), e.at("length").get<std::size_t>());
      BitReader r(code);
      auto v = decode_state(r, n);
      if (!v || !r.at_end()) fail(ErrorCode::codec, "ledger code " + code.to_string() + " is not a state code");
      if (e.contains("entries")) {
        SparseVector stored;
        stored.qubits = n;
        for (const auto& x : e.at("entries")) {
          stored.entries.push_back({x.at(0).get<std::uint64_t>(), {rational_at(x, 1), rational_at(x, 3)}});
        }
        if (!(stored == *v)) fail(ErrorCode::io, "ledger state differs from its decoded code " + code.to_string());
      }
      ledger.push_back({std::move(*v), code});
    }
    const auto expected = enumerate_states(n, budget);
    if (expected.size() != ledger.size()) fail(ErrorCode::io, "ledger is not the complete enumeration at this budget");
    for (std::size_t k = 0; k < ledger.size(); ++k)
      if (!(expected[k].code == ledger[k].code)) fail(ErrorCode::io, "ledger differs from the enumeration at entry " + std::to_string(k));
    UniversalMatrix mu = UniversalMatrix::from_ledger(n, budget, std::move(ledger));
    if (j.contains("matrix")) {
      const ComplexMatrix stored = matrix_from_json(j.at("matrix"));
      if (!(stored == mu.matrix())) fail(ErrorCode::io, "stored matrix differs from the rebuilt ledger sum");
    }
    return mu;
  } catch (const json::exception& e) {
    fail(ErrorCode::io, std::string("malformed mu file: ") + e.what());
  }
}

json score_to_json(const Score& s) {
  json ledger = json::array();
  for (const auto& line : s.ledger) {
    json prov = json::array();
    for (const auto& t : line.provenance) {
      prov.push_back({{"kind", t.kind}, {"detail", t.detail}, {"weight_bits", t.weight_bits}, {"scale_bits", t.scale_bits}});
    }
    ledger.push_back({{"test_id", line.test_id}, {"weight", line.weight}, {"trace_value", line.trace_value}, {"provenance", prov}});
  }
  json score = s.is_neg_inf() ? json("-inf") : json(s.value);
  return {{"score", score}, {"family_id", s.family_id}, {"ledger", ledger}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io, "write to '" + path + "' failed");
}

}  // namespace qgacs
