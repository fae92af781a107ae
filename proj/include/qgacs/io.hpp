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

#include <string>

#include <json.hpp>

#include "qgacs/info_lab.hpp"
#include "qgacs/matrix.hpp"
#include "qgacs/rational.hpp"
#include "qgacs/universal.hpp"

namespace qgacs {

/// {"dim": d, "rows": [[[re, im], ...], ...]}
nlohmann::json matrix_to_json(const ComplexMatrix& m);
/// {"dim": d, "exact": true, "rows": [[[num_re, den_re, num_im, den_im], ...], ...]}
nlohmann::json matrix_to_json(const RationalMatrix& m);

/// Accepts either layout; exact entries are converted to double.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
/// Exact layout only.
RationalMatrix rational_matrix_from_json(const nlohmann::json& j);
bool is_exact_matrix_json(const nlohmann::json& j);

/// Ledger codes as hex plus bit length, and the accumulated matrix.
nlohmann::json mu_to_json(const UniversalMatrix& mu);
/// Re-decodes every code, rebuilds the matrix and requires it to equal the
/// stored one bit for bit.
UniversalMatrix mu_from_json(const nlohmann::json& j);

/// {score, family_id, ledger: [{test_id, weight, trace_value, provenance}]}
nlohmann::json score_to_json(const Score& s);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qgacs
