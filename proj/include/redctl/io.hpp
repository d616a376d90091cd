/* Copyright 2026 The Redctl Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "redctl/fields.hpp"

namespace redctl {

using json = nlohmann::json;

// {"kind": "hermitian_evd", "n": 3} | {"kind": "real_svd", "p": 3, "q": 2} | {"kind": "polar", "n": 2}
PairDescriptor parse_pair(const json& j);
json pair_to_json(const PairDescriptor& pair);

// {"kind": "bloch", "Gamma": 3, "gamma": 1}
// {"kind": "affine", "matrix": [[...]] or row-major [...], "offset": [...]}   (ambient chart coordinates)
// {"kind": "scaled_identity", "s": -1}
// {"kind": "relax", "target": [...]}                        X(p) = embed(target) - p
DriftField parse_drift(const PairDescriptor& pair, const json& j);

Vec parse_vec(const json& j, const std::string& what);
Mat parse_mat(const json& j, const std::string& what);
json vec_to_json(const Vec& v);

// %.17g; round-trips through strtod.
std::string format_double(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

std::string csv_string(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace redctl
