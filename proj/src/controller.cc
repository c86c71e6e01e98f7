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

#include "spicl/controller.h"

#include <algorithm>
#include <cmath>

#include "spicl/errors.h"
#include "spicl/linalg.h"

namespace spicl {

namespace {

bool AllPass(const std::vector<GainCondition>& conds) {
  return std::all_of(conds.begin(), conds.end(),
                     [](const GainCondition& c) { return c.pass; });
}

GainCondition Less(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs < rhs};
}

}  // namespace

void ControllerGains::Validate(int state_dim) const {
  if (k.rows() != state_dim || k.cols() != state_dim) {
    throw ContractViolation("controller: K must be " +
                            std::to_string(state_dim) + "x" +
                            std::to_string(state_dim));
  }
  if (MaxAbsDifference(k, k.transpose()) > 1e-12) {
    throw ContractViolation("controller: K is not symmetric");
  }
  if (!(MinEigenvalue(k) > 0.0)) {
    throw ContractViolation("controller: K is not positive definite");
  }
}

Vector ControlInput(const BasisLibrary& basis, const ControlEffectiveness& g,
                    const Vector& x, const Vector& xd, const Vector& xd_dot,
                    const Vector& theta_hat, const Matrix& k) {
  const Vector v = xd_dot - basis.EvalY(x) * theta_hat - k * (x - xd);
  if (g.is_identity()) return v;
  return RightPseudoinverse(g.Eval(x)) * v;
}

Vector TrackingErrorDynamics(const Matrix& y_of_x, const Vector& e,
                             const Vector& theta_tilde, const Matrix& k) {
  return -k * e + y_of_x * theta_tilde;
}

double EstimateRegressorBound(const BasisLibrary& basis, double half_width,
                              int grid) {
  const int n = basis.state_dim();
  if (grid < 2) throw ContractViolation("EstimateRegressorBound: grid < 2");
  double best = 0.0;
  // Tensor lattice over all n axes; n is small (2 for the demo).
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  Vector x(n);
  const double spacing = 2.0 * half_width / (grid - 1);
  while (true) {
    for (int i = 0; i < n; ++i) {
      x(i) = -half_width + spacing * idx[static_cast<std::size_t>(i)];
    }
    best = std::max(best, basis.EvalY(x).norm());
    int d = 0;
    while (d < n && ++idx[static_cast<std::size_t>(d)] == grid) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == n) break;
  }
  return best;
}

double MaxTrajectoryNorm(const std::function<Vector(double)>& xd, double period,
                         int samples) {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / (samples - 1);
    best = std::max(best, xd(t).norm());
  }
  return best;
}

bool GainReport::passes_printed() const {
  return AllPass(tracking) && AllPass(composite_printed);
}

bool GainReport::passes_proof() const {
  return AllPass(tracking) && AllPass(composite_proof);
}

GainReport CheckGains(const GainCheckInputs& in) {
  const EstimatorGains& est = in.estimator;
  const auto p = static_cast<double>(est.gamma_diag.size());
  GainReport rep;
  rep.k = MinEigenvalue(in.k);
  rep.alpha = std::min(rep.k, est.icl_gain * in.target);
  rep.iota = est.ShrinkRate() * std::sqrt(p);
  // Gamma is diagonal, so the spectrum of Gamma^-1 is 1 / diag(Gamma).
  const double inv_min = 1.0 / est.gamma_diag.maxCoeff();
  const double inv_max = 1.0 / est.gamma_diag.minCoeff();
  rep.m_lo = 0.5 * std::min(1.0, inv_min);
  rep.m_hi = 0.5 * std::max(1.0, inv_max);
  const double theta_span = 2.0 * est.radius + est.boundary;
  rep.d_bar = theta_span * in.y_bound;
  rep.r_e = in.r_e;
  rep.r = in.r;
  rep.y_bound = in.y_bound;
  rep.xd_bound = in.xd_bound;
  rep.ultimate_bound = std::sqrt((rep.m_hi / rep.m_lo) * (rep.iota / rep.alpha));

  rep.tracking.push_back(
      Less("||e(t0)||^2 < r_e^2", in.e0_norm * in.e0_norm, in.r_e * in.r_e));
  rep.tracking.push_back(Less("d_bar^2/k^2 < r_e^2",
                              rep.d_bar * rep.d_bar / (rep.k * rep.k),
                              in.r_e * in.r_e));

  const double reach = std::max(in.r_e, theta_span);
  const double printed = rep.m_lo / rep.m_hi;
  const double proof = rep.m_hi / rep.m_lo;
  rep.composite_printed.push_back(
      Less("(m_lo/m_hi) max{r_e, 2r_theta+eps} < r", printed * reach, in.r));
  rep.composite_printed.push_back(
      Less("iota/alpha < (m_lo/m_hi) r^2", rep.iota / rep.alpha,
           printed * in.r * in.r));
  rep.composite_proof.push_back(
      Less("(m_hi/m_lo) max{r_e, 2r_theta+eps} < r", proof * reach, in.r));
  rep.composite_proof.push_back(
      Less("iota/alpha < (m_hi/m_lo) r^2", rep.iota / rep.alpha,
           proof * in.r * in.r));
  return rep;
}

}  // namespace spicl
