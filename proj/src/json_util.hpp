// Copyright 2026 The masogeom Authors.
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

// JSON helpers shared by the file-format code.
#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "masogeom/errors.hpp"
#include "masogeom/io.hpp"

namespace masogeom {
namespace detail {

[[noreturn]] inline void parse_fail(const std::string& path, const std::string& what) {
  fail(ErrorKind::kParse, path + ": " + what);
}

inline double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(path, "value is not finite");
  return v;
}

inline VectorXd vector_at(const Json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array of numbers");
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline MatrixXd matrix_at(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) parse_fail(path + "[0]", "expected a non-empty row");
  const std::size_t cols = j[0].size();
  MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const VectorXd row = vector_at(j[r], row_path);
    if (static_cast<std::size_t>(row.size()) != cols) {
      std::ostringstream os;
      os << "expected " << cols << " entries, got " << row.size();
      parse_fail(row_path, os.str());
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

inline Json matrix_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json vector_json(const VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace detail

}  // namespace masogeom
