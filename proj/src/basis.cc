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

#include "spicl/basis.h"

#include <cmath>
#include <utility>

#include "spicl/errors.h"
#include "spicl/linalg.h"

namespace spicl {

namespace {

void FillCubic(const Vector& x, Vector* phi) {
  const double a = x(0);
  const double b = x(1);
  phi->resize(10);
  (*phi) << 1.0, a, b, a * a, a * b, b * b, a * a * a, a * a * b, a * b * b,
      b * b * b;
}

}  // namespace

BasisLibrary::BasisLibrary(int state_dim, std::vector<ScalarBasis> basis)
    : state_dim_(state_dim) {
  if (state_dim <= 0) throw DimensionError("BasisLibrary: state_dim must be positive");
  if (basis.empty()) throw DimensionError("BasisLibrary: empty basis");
  std::vector<std::function<double(const Vector&)>> fns;
  for (auto& b : basis) {
    names_.push_back(b.name);
    fns.push_back(std::move(b.eval));
  }
  phi_ = [fns = std::move(fns)](const Vector& x, Vector* phi) {
    phi->resize(static_cast<Eigen::Index>(fns.size()));
    for (std::size_t i = 0; i < fns.size(); ++i) {
      (*phi)(static_cast<Eigen::Index>(i)) = fns[i](x);
    }
  };
}

BasisLibrary::BasisLibrary(int state_dim, std::vector<std::string> names,
                           PhiFn phi)
    : state_dim_(state_dim), names_(std::move(names)), phi_(std::move(phi)) {
  if (state_dim <= 0) throw DimensionError("BasisLibrary: state_dim must be positive");
  if (names_.empty()) throw DimensionError("BasisLibrary: empty basis");
}

BasisLibrary BasisLibrary::CubicMonomials2D() {
  return BasisLibrary(2,
                      {"1", "x1", "x2", "x1^2", "x1*x2", "x2^2", "x1^3",
                       "x1^2*x2", "x1*x2^2", "x2^3"},
                      FillCubic);
}

void BasisLibrary::CheckState(const Vector& x) const {
  if (x.size() != state_dim_) {
    throw DimensionError("basis: state has dimension " +
                         std::to_string(x.size()) + ", library expects " +
                         std::to_string(state_dim_));
  }
}

Vector BasisLibrary::EvalPhi(const Vector& x) const {
  CheckState(x);
  Vector phi;
  phi_(x, &phi);
  if (phi.size() != basis_size()) {
    throw DimensionError("basis: evaluator returned wrong length");
  }
  return phi;
}

Matrix BasisLibrary::EvalY(const Vector& x) const {
  Matrix y;
  EvalY(x, &y);
  return y;
}

void BasisLibrary::EvalY(const Vector& x, Matrix* y) const {
  const Vector phi = EvalPhi(x);
  const int q = basis_size();
  y->setZero(state_dim_, param_dim());
  for (int i = 0; i < state_dim_; ++i) {
    y->block(i, i * q, 1, q) = phi.transpose();
  }
}

Vector CubicMonomials(const Vector& x) {
  if (x.size() != 2) {
    throw DimensionError("CubicMonomials: expected a 2-vector, got dimension " +
                         std::to_string(x.size()));
  }
  Vector phi;
  FillCubic(x, &phi);
  return phi;
}

ControlEffectiveness::ControlEffectiveness(int state_dim, int input_dim, Fn g)
    : state_dim_(state_dim), input_dim_(input_dim), g_(std::move(g)) {
  if (input_dim < state_dim) {
    throw DimensionError(
        "ControlEffectiveness: input_dim < state_dim (underactuated)");
  }
}

ControlEffectiveness ControlEffectiveness::Identity(int state_dim) {
  ControlEffectiveness ce(state_dim, state_dim, [state_dim](const Vector&) {
    return Matrix::Identity(state_dim, state_dim);
  });
  ce.identity_ = true;
  return ce;
}

Matrix ControlEffectiveness::Eval(const Vector& x) const {
  if (x.size() != state_dim_) {
    throw DimensionError("ControlEffectiveness: state dimension mismatch");
  }
  Matrix g = g_(x);
  if (g.rows() != state_dim_ || g.cols() != input_dim_) {
    throw DimensionError("ControlEffectiveness: g(x) has wrong shape");
  }
  return g;
}

double ControlEffectiveness::SmallestSingularValue(const Vector& x) const {
  const Matrix g = Eval(x);
  return std::sqrt(std::max(0.0, MinEigenvalue(g * g.transpose())));
}

Matrix RightPseudoinverse(const Matrix& g, double max_condition) {
  if (g.rows() > g.cols()) {
    throw DimensionError("RightPseudoinverse: more rows than columns");
  }
  const Matrix ggt = g * g.transpose();
  const Vector ev = SymmetricEigenvalues(ggt);
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(lo > 0.0) || hi / lo > max_condition) {
    throw RankDeficiencyError(
        "RightPseudoinverse: G G^T is numerically singular");
  }
  return g.transpose() * ggt.ldlt().solve(Matrix::Identity(g.rows(), g.rows()));
}

}  // namespace spicl
