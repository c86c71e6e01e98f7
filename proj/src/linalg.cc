/*
 * Copyright 2026 The SP-ICL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "spicl/linalg.h"

#include <algorithm>
#include <cmath>

#include "spicl/errors.h"

namespace spicl {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kSymmetryTolerance = 1e-10;

double OffDiagonalNormSquared(const Matrix& a) {
  double sum = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
  }
  return sum;
}

}  // namespace

Vector SymmetricEigenvalues(const Matrix& s, double tolerance) {
  if (s.rows() != s.cols()) {
    throw ContractViolation("SymmetricEigenvalues: matrix is not square");
  }
  if (s.size() > 0 && MaxAbsDifference(s, s.transpose()) > kSymmetryTolerance) {
    throw ContractViolation("SymmetricEigenvalues: matrix is not symmetric");
  }
  const Eigen::Index n = s.rows();
  Matrix a = 0.5 * (s + s.transpose());
  const double scale = std::max(1.0, a.norm());
  const double stop = tolerance * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (std::sqrt(OffDiagonalNormSquared(a)) <= stop) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle that annihilates a(p, q).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  Vector values = a.diagonal();
  std::sort(values.data(), values.data() + values.size());
  return values;
}

double MinEigenvalue(const Matrix& s) {
  if (s.size() == 0) throw ContractViolation("MinEigenvalue: empty matrix");
  return SymmetricEigenvalues(s)(0);
}

bool MinEigenvalueExceeds(const Matrix& s, double bound) {
  Matrix shifted = s;
  shifted.diagonal().array() -= bound;
  Eigen::LLT<Matrix> llt(shifted);
  return llt.info() == Eigen::Success;
}

double MaxAbsDifference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("MaxAbsDifference: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace spicl
