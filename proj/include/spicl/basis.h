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

#ifndef SPICL_BASIS_H_
#define SPICL_BASIS_H_

#include <functional>
#include <string>
#include <vector>

#include "spicl/types.h"

namespace spicl {

// One candidate function R^n -> R of the dictionary.
struct ScalarBasis {
  std::string name;
  std::function<double(const Vector&)> eval;
};

// Candidate-function dictionary Y(x) in R^{n x p}.
//
// The scalar basis phi(x) in R^q is replicated block-diagonally: row i of
// Y(x) carries phi(x)^T in columns [i*q, (i+1)*q) and zeros elsewhere, so
// p = n*q. Each state derivative gets its own coefficient block.
//
// Instances are immutable after construction and safe to share between
// threads.
class BasisLibrary {
 public:
  using PhiFn = std::function<void(const Vector& x, Vector* phi)>;

  BasisLibrary(int state_dim, std::vector<ScalarBasis> basis);

  // Library with a fused evaluator for all q functions at once.
  BasisLibrary(int state_dim, std::vector<std::string> names, PhiFn phi);

  // The 10 monomials of degree <= 3 in (x1, x2), in the order
  // [1, x1, x2, x1^2, x1 x2, x2^2, x1^3, x1^2 x2, x1 x2^2, x2^3].
  static BasisLibrary CubicMonomials2D();

  int state_dim() const { return state_dim_; }
  int basis_size() const { return static_cast<int>(names_.size()); }
  int param_dim() const { return state_dim_ * basis_size(); }
  const std::vector<std::string>& names() const { return names_; }

  // Throws DimensionError if x.size() != state_dim().
  Vector EvalPhi(const Vector& x) const;
  Matrix EvalY(const Vector& x) const;
  // Allocation-free variant; *y is resized if needed.
  void EvalY(const Vector& x, Matrix* y) const;

 private:
  void CheckState(const Vector& x) const;

  int state_dim_;
  std::vector<std::string> names_;
  PhiFn phi_;
};

// Cubic monomials of a 2-vector in the order used by CubicMonomials2D().
// Throws DimensionError if x.size() != 2.
Vector CubicMonomials(const Vector& x);

// Known control effectiveness g: R^n -> R^{n x m}, m >= n.
class ControlEffectiveness {
 public:
  using Fn = std::function<Matrix(const Vector&)>;

  ControlEffectiveness(int state_dim, int input_dim, Fn g);

  static ControlEffectiveness Identity(int state_dim);

  int state_dim() const { return state_dim_; }
  int input_dim() const { return input_dim_; }
  bool is_identity() const { return identity_; }

  Matrix Eval(const Vector& x) const;

  // Smallest singular value of g(x), from the eigenvalues of g g^T.
  double SmallestSingularValue(const Vector& x) const;

 private:
  int state_dim_;
  int input_dim_;
  Fn g_;
  bool identity_ = false;
};

// Right pseudoinverse G^T (G G^T)^{-1} of a full-row-rank n x m matrix.
// Throws RankDeficiencyError when cond(G G^T) exceeds max_condition, and
// DimensionError when G has more rows than columns.
Matrix RightPseudoinverse(const Matrix& g, double max_condition = 1e12);

}  // namespace spicl

#endif  // SPICL_BASIS_H_
