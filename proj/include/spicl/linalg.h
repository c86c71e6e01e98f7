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

#ifndef SPICL_LINALG_H_
#define SPICL_LINALG_H_

#include "spicl/types.h"

namespace spicl {

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
// ascending. Iterates until the off-diagonal Frobenius norm is at most
// tolerance * max(1, ||S||_F). Throws ContractViolation if S is not square or
// not symmetric within 1e-10 (max norm).
Vector SymmetricEigenvalues(const Matrix& s, double tolerance = 1e-12);

// Smallest eigenvalue of a symmetric matrix (Jacobi).
double MinEigenvalue(const Matrix& s);

// True iff lambda_min(S) > bound, decided by attempting a Cholesky
// factorization of S - bound * I. Much cheaper than an eigen-solve and used
// for the stack's candidate scans.
bool MinEigenvalueExceeds(const Matrix& s, double bound);

// Largest absolute entry of a - b.
double MaxAbsDifference(const Matrix& a, const Matrix& b);

}  // namespace spicl

#endif  // SPICL_LINALG_H_
