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

#ifndef FERMIFORGE_LATTICE_HPP_
#define FERMIFORGE_LATTICE_HPP_

#include <string>
#include <utility>
#include <vector>

namespace fermiforge {

struct Site {
  int row = 0;
  int col = 0;
};

/// Column-adjacent pair of sites as JWT indices, j < k.
struct ParityEdge {
  int j = 0;
  int k = 0;
};

/// n_x columns by n_y rows with snake ordering: even rows run left to right,
/// odd rows right to left.
class Lattice2D {
 public:
  Lattice2D() = default;
  Lattice2D(int n_x, int n_y);

  int n_x() const { return n_x_; }
  int n_y() const { return n_y_; }
  int n_sites() const { return n_x_ * n_y_; }

  int index(int row, int col) const;
  Site site(int index) const;

  /// Same lattice with one extra row when n_y is odd.
  Lattice2D padded() const;

  /// Right-closed edges start on an even row, left-closed ones on an odd row.
  std::vector<ParityEdge> vertical_edges() const;
  std::vector<std::pair<int, int>> horizontal_edges() const;
  bool right_closed(const ParityEdge& e) const;

  std::string name() const;
  bool operator==(const Lattice2D& other) const = default;

 private:
  int n_x_ = 1;
  int n_y_ = 1;
};

/// Parses "NXxNY", e.g. "4x4".
Lattice2D parse_lattice(const std::string& text);

}  // namespace fermiforge

#endif  // FERMIFORGE_LATTICE_HPP_
