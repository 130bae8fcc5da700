// Copyright 2026 The fermiforge Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fermiforge/io.hpp"

namespace fermiforge {

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (int i = 0; i < m.rows(); i++) {
    for (int j = 0; j < m.cols(); j++) {
      data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw Error("matrix JSON: expected rows, cols and data");
  }
  long rows = j.at("rows").get<long>();
  long cols = j.at("cols").get<long>();
  const Json& data = j.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<long>(data.size()) != rows * cols) {
    throw Error("matrix JSON: data length does not match rows x cols");
  }
  ComplexMatrix m(rows, cols);
  for (long i = 0; i < rows; i++) {
    for (long k = 0; k < cols; k++) {
      const Json& e = data[i * cols + k];
      if (!e.is_array() || e.size() != 2) {
        throw Error("matrix JSON: entries must be [re, im] pairs");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  if (!m.allFinite()) {
    throw Error("matrix JSON: non-finite entry");
  }
  return m;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::string& path, const std::string& contents) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot write '" + tmp + "'");
    }
    out << contents;
    if (!out) {
      throw Error("write failed for '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move output into '" + path + "'");
  }
}

}  // namespace fermiforge
