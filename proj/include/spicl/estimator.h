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

#ifndef SPICL_ESTIMATOR_H_
#define SPICL_ESTIMATOR_H_

#include <string>

#include "spicl/history_stack.h"
#include "spicl/types.h"

namespace spicl {

// Coefficient in front of Gamma * sign(theta_hat) in the update law.
enum class ShrinkScaling {
  kLambdaGamma,  // lambda * gamma (ICL gain included)
  kLambda,       // lambda alone
};

std::string ToString(ShrinkScaling s);
// Accepts "lambda_gamma" or "lambda"; throws std::invalid_argument otherwise.
ShrinkScaling ParseShrinkScaling(const std::string& s);

struct EstimatorGains {
  Vector gamma_diag;  // diagonal of Gamma, all entries > 0
  double icl_gain = 0.1;  // gamma
  double lambda = 0.0;    // sparsity weight
  double radius = 5.0;    // r_theta
  double boundary = 0.5;  // epsilon
  ShrinkScaling shrink = ShrinkScaling::kLambdaGamma;

  // lambda * gamma or lambda, per shrink.
  double ShrinkRate() const;
  // Throws ContractViolation on non-positive gains or lambda < 0.
  void Validate(int param_dim) const;
};

// J = 1/2 th^T Ysum th - th^T Usum + lambda ||th||_1.
double Cost(const Vector& theta_hat, const Matrix& ysum, const Vector& usum,
            double lambda);
double Cost(const Vector& theta_hat, const MemoryRegressor& mr, double lambda);

// Componentwise sign with the zero selection at 0.
Vector SignSelection(const Vector& theta_hat);

// Smooth projection onto the ball ||th|| <= radius with boundary layer
// epsilon. With q = (||th||^2 - r^2) / (eps^2 + 2 eps r) and grad q =
// 2 th / (eps^2 + 2 eps r), returns v if q <= 0 or grad_q^T v <= 0, and
// otherwise v - q Gamma grad_q grad_q^T v / (grad_q^T Gamma grad_q).
// Throws ContractViolation if ||th|| > r + eps + tolerance.
Vector SmoothProjection(const Vector& theta_hat, const Vector& v,
                        const Vector& gamma_diag, double radius,
                        double boundary, double tolerance = 0.0);

// Right-hand side of the update law,
//   proj(th, Gamma (Y^T e + gamma (Usum - Ysum th)), Gamma)
//     - shrink_rate * Gamma * sign,
// where sign is the caller's selection from SGN(th) (usually frozen at the
// start of an integration step). Throws DivergenceError on non-finite
// output.
Vector UpdateDirection(const Matrix& y_of_x, const Vector& e,
                       const Vector& theta_hat, const Vector& sign,
                       const EstimatorGains& gains, const Matrix& ysum,
                       const Vector& usum, double projection_tolerance = 0.0);

// Convenience overload that evaluates the sign selection at theta_hat.
Vector UpdateDirection(const Matrix& y_of_x, const Vector& e,
                       const Vector& theta_hat, const EstimatorGains& gains,
                       const MemoryRegressor& mr);

}  // namespace spicl

#endif  // SPICL_ESTIMATOR_H_
