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

#include "redctl/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace redctl {

namespace {

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw ShapeError(std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

double get_double(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ShapeError(std::string("missing numeric field '") + key + "'");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ShapeError(std::string("field '") + key + "' is not finite");
  return v;
}

// "kind" is canonical; "type" is accepted as an alias.
std::string kind_of(const json& j, const char* what) {
  for (const char* key : {"kind", "type"})
    if (j.is_object() && j.contains(key) && j.at(key).is_string()) return j.at(key).get<std::string>();
  throw ShapeError(std::string(what) + " must be an object with a 'kind'");
}

}  // namespace

PairDescriptor parse_pair(const json& j) {
  const std::string t = kind_of(j, "pair");
  if (t == "hermitian_evd") return PairDescriptor::hermitian_evd(get_int(j, "n"));
  if (t == "real_svd") return PairDescriptor::real_svd(get_int(j, "p"), get_int(j, "q"));
  if (t == "polar") return PairDescriptor::polar(get_int(j, "n"));
  throw ShapeError("unknown pair kind '" + t + "'");
}

json pair_to_json(const PairDescriptor& pair) {
  switch (pair.kind()) {
    case PairKind::HermitianEVD: return {{"kind", "hermitian_evd"}, {"n", pair.n()}};
    case PairKind::RealSVD: return {{"kind", "real_svd"}, {"p", pair.p()}, {"q", pair.q()}};
    case PairKind::PolarDec: return {{"kind", "polar"}, {"n", pair.n()}};
  }
  return {};
}

DriftField parse_drift(const PairDescriptor& pair, const json& j) {
  const std::string t = kind_of(j, "drift");
  const int d = pair.ambient_dim();
  if (t == "bloch") {
    if (!(pair.kind() == PairKind::PolarDec && pair.n() == 2))
      throw ShapeError("bloch drift needs the polar(2) pair");
    const double g = get_double(j, "Gamma");
    const double l = j.contains("gamma") ? get_double(j, "gamma") : 1.0;
    return DriftField::bloch(g, l);
  }
  if (t == "affine") {
    const json& jm = j.at("matrix");
    Mat m;
    if (jm.is_array() && !jm.empty() && jm[0].is_number()) {
      const Vec flat = parse_vec(jm, "drift matrix");
      if (flat.size() != static_cast<Eigen::Index>(d) * d)
        throw ShapeError("flat drift matrix needs " + std::to_string(d * d) + " entries");
      m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
          flat.data(), d, d);
    } else {
      m = parse_mat(jm, "drift matrix");
    }
    Vec b = j.contains("offset") ? parse_vec(j.at("offset"), "drift offset") : Vec::Zero(d);
    if (m.rows() != d || m.cols() != d || b.size() != d)
      throw ShapeError("affine drift must use the ambient chart dimension " + std::to_string(d));
    return DriftField::affine(std::move(m), std::move(b));
  }
  if (t == "scaled_identity") return DriftField::scaled_identity(pair, get_double(j, "s"));
  if (t == "relax") {
    const Vec target = parse_vec(j.at("target"), "relax target");
    if (target.size() != pair.coord_dim()) throw ShapeError("relax target has wrong size");
    return DriftField::affine(-Mat::Identity(d, d), ambient_coords(pair, embed(pair, target)));
  }
  throw ShapeError("unknown drift kind '" + t + "'");
}

Vec parse_vec(const json& j, const std::string& what) {
  if (j.is_number()) return Vec::Constant(1, j.get<double>());
  if (!j.is_array()) throw ShapeError(what + " must be a numeric array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ShapeError(what + " must be a numeric array");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  if (!v.allFinite()) throw ShapeError(what + " contains non-finite values");
  return v;
}

Mat parse_mat(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ShapeError(what + " must be an array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vec r = parse_vec(j[i], what);
    if (static_cast<std::size_t>(r.size()) != cols) throw ShapeError(what + " rows differ in length");
    m.row(static_cast<Eigen::Index>(i)) = r.transpose();
  }
  return m;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ShapeError("csv has no column '" + name + "'");
}

std::string csv_string(const CsvTable& table) {
  std::string s;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) s += ',';
    s += table.header[i];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_double(row[i]);
    }
    s += '\n';
  }
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  if (!f) throw Error("write to '" + path + "' failed");
}

void write_csv(const std::string& path, const CsvTable& table) {
  write_text(path, csv_string(table));
}

CsvTable read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ShapeError("cannot read '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(f, line)) throw ShapeError("'" + path + "' is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw ShapeError("non-numeric csv cell '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != t.header.size()) throw ShapeError("csv row has the wrong number of cells");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace redctl
