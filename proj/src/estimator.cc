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

#include "spicl/estimator.h"

#include <cmath>
#include <stdexcept>

#include "spicl/errors.h"

namespace spicl {

std::string ToString(ShrinkScaling s) {
  return s == ShrinkScaling::kLambdaGamma ? "lambda_gamma" : "lambda";
}

ShrinkScaling ParseShrinkScaling(const std::string& s) {
  if (s == "lambda_gamma") return ShrinkScaling::kLambdaGamma;
  if (s == "lambda") return ShrinkScaling::kLambda;
  throw std::invalid_argument("unknown shrink scaling '" + s +
                              "' (expected lambda_gamma or lambda)");
}

double EstimatorGains::ShrinkRate() const {
  return shrink == ShrinkScaling::kLambdaGamma ? lambda * icl_gain : lambda;
}

void EstimatorGains::Validate(int param_dim) const {
  if (gamma_diag.size() != param_dim) {
    throw ContractViolation("estimator: Gamma has wrong dimension");
  }
  if ((gamma_diag.array() <= 0.0).any()) {
    throw ContractViolation("estimator: Gamma must be positive definite");
  }
  if (!(icl_gain > 0.0)) throw ContractViolation("estimator: gamma must be > 0");
  if (!(lambda >= 0.0)) throw ContractViolation("estimator: lambda must be >= 0");
  if (!(radius > 0.0)) throw ContractViolation("estimator: r_theta must be > 0");
  if (!(boundary > 0.0)) throw ContractViolation("estimator: epsilon must be > 0");
}

double Cost(const Vector& theta_hat, const Matrix& ysum, const Vector& usum,
            double lambda) {
  return 0.5 * theta_hat.dot(ysum * theta_hat) - theta_hat.dot(usum) +
         lambda * theta_hat.lpNorm<1>();
}

double Cost(const Vector& theta_hat, const MemoryRegressor& mr, double lambda) {
  return Cost(theta_hat, mr.ysum, mr.usum, lambda);
}

Vector SignSelection(const Vector& theta_hat) {
  return theta_hat.unaryExpr([](double v) {
    return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
  });
}

Vector SmoothProjection(const Vector& theta_hat, const Vector& v,
                        const Vector& gamma_diag, double radius,
                        double boundary, double tolerance) {
  const double norm2 = theta_hat.squaredNorm();
  const double outer = radius + boundary;
  if (std::sqrt(norm2) > outer + tolerance) {
    throw ContractViolation("SmoothProjection: ||theta_hat|| = " +
                            std::to_string(std::sqrt(norm2)) +
                            " exceeds r_theta + epsilon = " +
                            std::to_string(outer));
  }
  const double denom = boundary * boundary + 2.0 * boundary * radius;
  const double q = (norm2 - radius * radius) / denom;
  if (q <= 0.0) return v;
  const Vector grad = (2.0 / denom) * theta_hat;
  const double grad_v = grad.dot(v);
  if (grad_v <= 0.0) return v;
  const Vector gamma_grad = gamma_diag.cwiseProduct(grad);
  return v - (q * grad_v / grad.dot(gamma_grad)) * gamma_grad;
}

Vector UpdateDirection(const Matrix& y_of_x, const Vector& e,
                       const Vector& theta_hat, const Vector& sign,
                       const EstimatorGains& gains, const Matrix& ysum,
                       const Vector& usum, double projection_tolerance) {
  const Vector raw =
      y_of_x.transpose() * e + gains.icl_gain * (usum - ysum * theta_hat);
  const Vector phi = gains.gamma_diag.cwiseProduct(raw);
  Vector dir = SmoothProjection(theta_hat, phi, gains.gamma_diag, gains.radius,
                                gains.boundary, projection_tolerance);
  dir -= gains.ShrinkRate() * gains.gamma_diag.cwiseProduct(sign);
  if (!dir.allFinite()) {
    throw DivergenceError("UpdateDirection: non-finite parameter derivative",
                          0.0, theta_hat);
  }
  return dir;
}

Vector UpdateDirection(const Matrix& y_of_x, const Vector& e,
                       const Vector& theta_hat, const EstimatorGains& gains,
                       const MemoryRegressor& mr) {
  return UpdateDirection(y_of_x, e, theta_hat, SignSelection(theta_hat), gains,
                         mr.ysum, mr.usum);
}

}  // namespace spicl
