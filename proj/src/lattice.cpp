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

#include "fermiforge/lattice.hpp"

#include <charconv>

#include "fermiforge/linalg.hpp"

namespace fermiforge {

Lattice2D::Lattice2D(int n_x, int n_y) : n_x_(n_x), n_y_(n_y) {
  if (n_x < 1 || n_y < 1) {
    throw Error("lattice dimensions must be positive, got " + std::to_string(n_x) + "x" +
                std::to_string(n_y));
  }
}

int Lattice2D::index(int row, int col) const {
  if (row < 0 || row >= n_y_ || col < 0 || col >= n_x_) {
    throw Error("site (" + std::to_string(row) + ", " + std::to_string(col) + ") outside " + name());
  }
  return row * n_x_ + (row % 2 == 0 ? col : n_x_ - 1 - col);
}

Site Lattice2D::site(int index) const {
  if (index < 0 || index >= n_sites()) {
    throw Error("site index " + std::to_string(index) + " outside " + name());
  }
  int row = index / n_x_;
  int off = index % n_x_;
  return {row, row % 2 == 0 ? off : n_x_ - 1 - off};
}

Lattice2D Lattice2D::padded() const { return Lattice2D(n_x_, n_y_ + n_y_ % 2); }

std::vector<ParityEdge> Lattice2D::vertical_edges() const {
  std::vector<ParityEdge> out;
  for (int r = 0; r + 1 < n_y_; r++) {
    for (int c = 0; c < n_x_; c++) {
      out.push_back({index(r, c), index(r + 1, c)});
    }
  }
  return out;
}

std::vector<std::pair<int, int>> Lattice2D::horizontal_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < n_y_; r++) {
    for (int c = 0; c + 1 < n_x_; c++) {
      int a = index(r, c);
      int b = index(r, c + 1);
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  return out;
}

bool Lattice2D::right_closed(const ParityEdge& e) const { return site(e.j).row % 2 == 0; }

std::string Lattice2D::name() const { return std::to_string(n_x_) + "x" + std::to_string(n_y_); }

Lattice2D parse_lattice(const std::string& text) {
  auto x = text.find_first_of("xX");
  int nx = 0;
  int ny = 0;
  const char* end = text.data() + text.size();
  if (x == std::string::npos ||
      std::from_chars(text.data(), text.data() + x, nx).ptr != text.data() + x ||
      std::from_chars(text.data() + x + 1, end, ny).ptr != end) {
    throw Error("bad lattice '" + text + "', expected NXxNY");
  }
  return Lattice2D(nx, ny);
}

}  // namespace fermiforge
