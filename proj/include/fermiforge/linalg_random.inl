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

#include <random>

namespace fermiforge {

template <class Rng>
ComplexMatrix random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      z(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().template triangularView<Eigen::Upper>();
  // Fix the phases of R's diagonal so the distribution is Haar.
  for (int j = 0; j < n; j++) {
    Complex d = r(j, j);
    double a = std::abs(d);
    if (a > 0) {
      q.col(j) *= d / a;
    }
  }
  return q;
}

template <class Rng>
ComplexMatrix random_isometry(int m, int n, Rng& rng) {
  ComplexMatrix u = random_unitary(n, rng);
  return u.topRows(m);
}

}  // namespace fermiforge
