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

#ifndef SPICL_EXPERIMENT_H_
#define SPICL_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spicl/basis.h"
#include "spicl/controller.h"
#include "spicl/estimator.h"
#include "spicl/types.h"

namespace spicl {

struct TrajectoryPoint {
  Vector x;      // x_d(t)
  Vector x_dot;  // d/dt x_d(t)
};

// Demo reference: x_d(t) = (sin t + 0.12 sin 3t - 0.04 sin 5t,
//                          0.95 sin 2t + 0.08 sin 4t), with exact derivative.
TrajectoryPoint DemoTrajectory(double t);

// Everything about the plant and reference that is code rather than numbers.
struct Scenario {
  BasisLibrary basis;
  ControlEffectiveness effectiveness;
  std::function<TrajectoryPoint(double)> trajectory;
  double trajectory_period = 0.0;  // used for the x_d bound

  // Two-state cubic-monomial library, g = I, DemoTrajectory.
  static Scenario Demo();
};

// All numeric scenario constants. Defaults reproduce the demo study.
struct SimConfig {
  // [plant]
  Vector x0;
  Vector theta_true;
  // [controller]
  Matrix k;
  double r_e = 1.0;
  double r = 12.0;
  // [estimator]
  Vector theta_hat0;
  Vector gamma_diag;
  double icl_gain = 0.1;
  double lambda = 0.0;
  double radius = 5.0;
  double boundary = 0.5;
  ShrinkScaling shrink = ShrinkScaling::kLambdaGamma;
  // [stack]
  int stack_size = 20;
  double target = 0.5;
  double kappa = 0.01;
  double improvement = 1.01;
  // Seconds between candidate offers once t > T; 0 offers every step.
  double offer_interval = 0.05;
  // [simulation]
  double window = 0.25;  // T
  double step = 1e-3;    // h
  double t_final = 100.0;
  int decimate = 10;
  // [metrics]
  double threshold = 0.06;      // sparsity threshold tau
  double rms_start = 50.0;      // RMS ||e|| window
  double rms_end = 100.0;
  double chatter_start = 90.0;  // peak-to-peak ||theta_tilde|| window start
  double bound_start = 75.0;    // lim-sup ||z|| window start

  static SimConfig Demo();

  EstimatorGains estimator_gains() const;
  // Throws ConfigError naming the offending key.
  void Validate(int state_dim, int param_dim) const;
  std::int64_t steps() const;
  // Offer period in integration steps (>= 1).
  std::int64_t offer_stride() const;
};

struct StackEvent {
  double t = 0.0;
  int replaced_index = -1;  // -1 while filling
  double lambda_min = 0.0;
};

struct RunResult {
  double lambda = 0.0;
  std::vector<double> times;
  std::vector<double> e_norm;
  std::vector<double> theta_err_norm;
  std::vector<double> lambda_min;
  Vector theta_hat_final;
  std::vector<StackEvent> stack_events;
  GainReport gains;

  double rms_e = 0.0;             // RMS ||e|| over [rms_start, rms_end]
  double theta_err_final = 0.0;   // ||theta_tilde(t_f)||
  double max_theta_norm = 0.0;    // max ||theta_hat|| over all steps
  double chatter_p2p = 0.0;       // peak-to-peak ||theta_tilde|| late window
  double z_limsup = 0.0;          // max ||z|| over [bound_start, t_f]
  double max_filter_residual = 0.0;  // max ||Uf - Yf theta_true||, t > T
  std::optional<double> target_time;  // first time lambda_min >= y_bar
  // min lambda_min over stack states after target_time (checked at every
  // accepted insertion and every recorded sample).
  std::optional<double> lambda_min_after_target;
  double lambda_min_final = 0.0;
  std::int64_t accepted = 0;
  std::int64_t offered = 0;
};

struct RunOptions {
  // Compute lambda_min after every accepted insertion for the event log and
  // the post-target minimum. Costs one eigen-solve per acceptance.
  bool track_every_insertion = false;
  // Skip the estimator update (theta_hat stays at theta_hat0).
  bool freeze_estimate = false;
};

// Gain-condition report for a config: x_d bound from one trajectory period,
// Y bound over the box of half-width r_e + x_d bound.
GainReport EvaluateGains(const SimConfig& config, const Scenario& scenario);

// Closed-loop simulation on the fixed grid. Throws DivergenceError if the
// state becomes non-finite and ConfigError for invalid configs.
RunResult RunScenario(const SimConfig& config, const Scenario& scenario,
                      const RunOptions& options = {});

// Mask of |theta_i| > tau. Throws std::invalid_argument unless tau > 0.
std::vector<bool> ClassifySparsity(const Vector& theta, double tau);

struct ConfusionCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
  int total() const { return tp + fp + fn + tn; }
};

// Positives are nonzero terms. Throws DimensionError on length mismatch.
ConfusionCounts Confusion(const std::vector<bool>& predicted,
                          const std::vector<bool>& truth);

struct RecoveryMetrics {
  std::optional<double> precision;  // empty for 0/0
  std::optional<double> recall;     // empty for 0/0
  double f1 = 0.0;                  // 0 when either is 0 or undefined
};

RecoveryMetrics PrecisionRecallF1(int tp, int fp, int fn);

// The eight-value grid {0, 1e-5, 1e-4, 1e-3, 5e-3, 1e-2, 5e-2, 1e-1}.
std::vector<double> DefaultLambdaGrid();

struct SweepRow {
  double lambda = 0.0;
  bool ok = true;
  std::string error;
  int nonzeros = 0;
  ConfusionCounts counts;
  RecoveryMetrics metrics;
  double rms_e = 0.0;
  double theta_err_final = 0.0;
  double max_theta_norm = 0.0;
  double chatter_p2p = 0.0;
  double z_limsup = 0.0;
  double ultimate_bound = 0.0;
  bool gains_pass = false;  // tracking + composite (proof reading)
  double lambda_min_final = 0.0;
  std::optional<double> target_time;
  Vector theta_hat_final;
};

struct SweepReport {
  std::vector<SweepRow> rows;
};

// Fills the metric columns of a row from a finished run.
SweepRow SummarizeRun(const RunResult& run, const SimConfig& config);

using RunCallback =
    std::function<void(double lambda, const RunResult* run, const SweepRow&)>;

// Runs one simulation per lambda on up to `workers` threads. Rows come back
// in input order. Divergence is recorded in the row and the sweep continues.
// on_run, if set, is called from the worker thread that finished the run.
SweepReport LambdaSweep(const SimConfig& config, const Scenario& scenario,
                        const std::vector<double>& lambdas, int workers = 1,
                        const RunCallback& on_run = {},
                        const RunOptions& options = {});

}  // namespace spicl

#endif  // SPICL_EXPERIMENT_H_
