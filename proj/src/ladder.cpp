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

#include <algorithm>

#include "fermiforge/hubbard.hpp"

namespace fermiforge {

std::vector<Gate> fswap_network(const std::vector<int>& target, int offset) {
  const int n = static_cast<int>(target.size());
  std::vector<int> cur = target;
  std::vector<int> seen(n, 0);
  for (int t : target) {
    if (t < 0 || t >= n || seen[t]++) throw Error("fswap_network: not a permutation");
  }
  std::vector<Gate> out;
  for (int round = 0; round < n; round++) {
    bool moved = false;
    for (int i = round % 2; i + 1 < n; i += 2) {
      if (cur[i] > cur[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        out.push_back(Gate::fswap(offset + i, offset + i + 1));
        moved = true;
      }
    }
    if (!moved && round > 0 && std::is_sorted(cur.begin(), cur.end())) break;
  }
  return out;
}

std::vector<Gate> in_situ_transposition(int n, int offset) {
  if (n < 1) throw Error("row length must be positive");
  std::vector<int> target(2 * n);
  for (int c = 0; c < n; c++) {
    target[c] = 2 * c;
    target[n + c] = 2 * c + 1;
  }
  return fswap_network(target, offset);
}

std::vector<Gate> full_transposition(int n_x, int n_y, int offset) {
  std::vector<int> target(n_x * n_y);
  for (int r = 0; r < n_y; r++) {
    for (int c = 0; c < n_x; c++) target[r * n_x + c] = c * n_y + r;
  }
  return fswap_network(target, offset);
}

std::vector<int> track_fswaps(const std::vector<Gate>& gates, int n) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; i++) labels[i] = i;
  for (const Gate& g : gates) {
    if (g.kind != GateKind::FSWAP) throw Error("track_fswaps: only FSWAP gates allowed");
    std::swap(labels.at(g.q0), labels.at(g.q1));
  }
  return labels;
}

LadderCounts ladder_closed_form(int n_x, int n_y) {
  LadderCounts c;
  c.n_trans = 2 * (n_y - 1) * (n_x - 1) * n_x;
  c.n_int = n_x * n_y;
  c.n_hop = 2 * (n_y - 1) * n_x + 2 * (n_x - 1) * n_y;
  return c;
}

}  // namespace fermiforge
