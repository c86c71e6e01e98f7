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

#ifndef SPICL_CONTROLLER_H_
#define SPICL_CONTROLLER_H_

#include <functional>
#include <string>
#include <vector>

#include "spicl/basis.h"
#include "spicl/estimator.h"
#include "spicl/types.h"

namespace spicl {

// Symmetric positive-definite feedback gain K.
struct ControllerGains {
  Matrix k;

  // Throws ContractViolation unless K is square, symmetric within 1e-12 and
  // has a positive smallest eigenvalue.
  void Validate(int state_dim) const;
};

// Certainty-equivalence input u = g+(x) (xd_dot - Y(x) th - K e), e = x - xd.
Vector ControlInput(const BasisLibrary& basis, const ControlEffectiveness& g,
                    const Vector& x, const Vector& xd, const Vector& xd_dot,
                    const Vector& theta_hat, const Matrix& k);

// Closed-loop error dynamics -K e + Y(x) theta_tilde.
Vector TrackingErrorDynamics(const Matrix& y_of_x, const Vector& e,
                             const Vector& theta_tilde, const Matrix& k);

// Max Frobenius norm of Y(x) over a tensor lattice with `grid` points per
// axis on the box [-half_width, half_width]^n.
double EstimateRegressorBound(const BasisLibrary& basis, double half_width,
                              int grid = 101);

// Max ||xd(t)|| over samples uniformly spaced on [0, period].
double MaxTrajectoryNorm(const std::function<Vector(double)>& xd, double period,
                         int samples = 10001);

struct GainCheckInputs {
  Matrix k;
  EstimatorGains estimator;
  double target = 0.5;     // y_bar
  double e0_norm = 0.0;    // ||e(t0)||
  double r_e = 1.0;        // tracking analysis radius
  double r = 12.0;         // composite analysis radius
  double y_bound = 0.0;    // Y_bar, bound on ||Y(x)||
  double xd_bound = 0.0;   // x_bar_d, reported only
};

struct GainCondition {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;  // lhs < rhs
};

struct GainReport {
  double k = 0.0;       // lambda_min(K)
  double alpha = 0.0;   // min(k, gamma y_bar)
  double iota = 0.0;    // shrink_rate sqrt(p)
  double m_lo = 0.0;    // 1/2 min(1, lambda_min(Gamma^-1))
  double m_hi = 0.0;    // 1/2 max(1, lambda_max(Gamma^-1))
  double d_bar = 0.0;   // (2 r_theta + eps) Y_bar
  double r_e = 0.0;
  double r = 0.0;
  double y_bound = 0.0;
  double xd_bound = 0.0;
  // sqrt((m_hi / m_lo) (iota / alpha)).
  double ultimate_bound = 0.0;

  // Tracking-phase conditions, shared by both readings.
  std::vector<GainCondition> tracking;
  // Composite conditions with the ratio m_lo/m_hi as printed in the theorem
  // statement, and with the ratio m_hi/m_lo used in its proof.
  std::vector<GainCondition> composite_printed;
  std::vector<GainCondition> composite_proof;

  bool passes_printed() const;
  bool passes_proof() const;
};

// Advisory evaluation of the ultimate-boundedness gain conditions. Never
// throws for failing conditions; they are reported.
GainReport CheckGains(const GainCheckInputs& in);

}  // namespace spicl

#endif  // SPICL_CONTROLLER_H_
