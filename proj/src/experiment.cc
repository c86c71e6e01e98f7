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

#include "spicl/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spicl/errors.h"
#include "spicl/history_stack.h"
#include "spicl/integrator.h"

namespace spicl {

TrajectoryPoint DemoTrajectory(double t) {
  TrajectoryPoint p;
  p.x.resize(2);
  p.x_dot.resize(2);
  p.x << std::sin(t) + 0.12 * std::sin(3.0 * t) - 0.04 * std::sin(5.0 * t),
      0.95 * std::sin(2.0 * t) + 0.08 * std::sin(4.0 * t);
  p.x_dot << std::cos(t) + 0.36 * std::cos(3.0 * t) - 0.20 * std::cos(5.0 * t),
      1.90 * std::cos(2.0 * t) + 0.32 * std::cos(4.0 * t);
  return p;
}

Scenario Scenario::Demo() {
  return Scenario{BasisLibrary::CubicMonomials2D(),
                  ControlEffectiveness::Identity(2), DemoTrajectory,
                  2.0 * std::numbers::pi};
}

SimConfig SimConfig::Demo() {
  SimConfig c;
  c.x0 = Vector::Constant(2, 0.5);
  c.theta_true = Vector::Zero(20);
  // Row 1: -x1 - x2.  Row 2: -x1/2 - x2^2/2 - x1^2 x2/2.
  c.theta_true(1) = -1.0;
  c.theta_true(2) = -1.0;
  c.theta_true(11) = -0.5;
  c.theta_true(15) = -0.5;
  c.theta_true(17) = -0.5;
  c.k = 10.0 * Matrix::Identity(2, 2);
  c.theta_hat0 = Vector::Zero(20);
  c.gamma_diag = Vector::Ones(20);
  c.shrink = ShrinkScaling::kLambda;
  return c;
}

EstimatorGains SimConfig::estimator_gains() const {
  EstimatorGains g;
  g.gamma_diag = gamma_diag;
  g.icl_gain = icl_gain;
  g.lambda = lambda;
  g.radius = radius;
  g.boundary = boundary;
  g.shrink = shrink;
  return g;
}

std::int64_t SimConfig::steps() const {
  return static_cast<std::int64_t>(std::llround(t_final / step));
}

std::int64_t SimConfig::offer_stride() const {
  return std::max<std::int64_t>(1, std::llround(offer_interval / step));
}

void SimConfig::Validate(int state_dim, int param_dim) const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why, key);
  };
  if (x0.size() != state_dim) fail("[plant].x0", "wrong dimension");
  if (theta_true.size() != param_dim) fail("[plant].theta_true", "wrong dimension");
  if (theta_hat0.size() != param_dim) fail("[estimator].theta_hat0", "wrong dimension");
  if (gamma_diag.size() != param_dim) fail("[estimator].Gamma", "wrong dimension");
  try {
    ControllerGains{k}.Validate(state_dim);
  } catch (const ContractViolation& e) {
    fail("[controller].K", e.what());
  }
  if ((gamma_diag.array() <= 0.0).any()) fail("[estimator].Gamma", "entries must be > 0");
  if (!(icl_gain > 0.0)) fail("[estimator].gamma", "must be > 0");
  if (!(lambda >= 0.0)) fail("[estimator].lambda", "must be >= 0");
  if (!(radius > 0.0)) fail("[estimator].r_theta", "must be > 0");
  if (!(boundary > 0.0)) fail("[estimator].epsilon", "must be > 0");
  if (theta_hat0.norm() > radius + boundary) {
    fail("[estimator].theta_hat0", "outside the ball r_theta + epsilon");
  }
  if (!(r_e > 0.0)) fail("[controller].r_e", "must be > 0");
  if (!(r > 0.0)) fail("[controller].r", "must be > 0");
  if (stack_size < 1) fail("[stack].N", "must be >= 1");
  if (!(target > 0.0)) fail("[stack].ybar", "must be > 0");
  if (!(kappa > 0.0)) fail("[stack].kappa", "must be > 0");
  if (!(improvement >= 1.0)) fail("[stack].delta", "must be >= 1");
  if (!(offer_interval >= 0.0)) fail("[stack].offer_interval", "must be >= 0");
  if (!(step > 0.0)) fail("[simulation].h", "must be > 0");
  if (!(window > 0.0)) fail("[simulation].T", "must be > 0");
  if (!(t_final > window)) fail("[simulation].t_final", "must exceed T");
  if (decimate < 1) fail("[simulation].decimate", "must be >= 1");
  if (!(threshold > 0.0)) fail("[metrics].threshold", "must be > 0");
  if (!(rms_end > rms_start)) fail("[metrics].rms_end", "must exceed rms_start");
}

GainReport EvaluateGains(const SimConfig& config, const Scenario& scenario) {
  GainCheckInputs in;
  in.k = config.k;
  in.estimator = config.estimator_gains();
  in.target = config.target;
  in.e0_norm = (config.x0 - scenario.trajectory(0.0).x).norm();
  in.r_e = config.r_e;
  in.r = config.r;
  in.xd_bound = MaxTrajectoryNorm(
      [&](double t) { return scenario.trajectory(t).x; },
      scenario.trajectory_period);
  in.y_bound = EstimateRegressorBound(scenario.basis, config.r_e + in.xd_bound);
  return CheckGains(in);
}

RunResult RunScenario(const SimConfig& config, const Scenario& scenario,
                      const RunOptions& options) {
  const BasisLibrary& basis = scenario.basis;
  const ControlEffectiveness& g = scenario.effectiveness;
  const int n = basis.state_dim();
  const int p = basis.param_dim();
  config.Validate(n, p);

  const EstimatorGains gains = config.estimator_gains();
  const double h = config.step;
  const std::int64_t steps = config.steps();
  const auto window_steps =
      static_cast<std::int64_t>(std::llround(config.window / h));
  // Stage evaluations may sit a hair outside the invariant ball.
  const double projection_slack = 10.0 * h;
  const std::int64_t stride = config.offer_stride();

  RunResult res;
  res.lambda = config.lambda;

  res.gains = EvaluateGains(config, scenario);

  HistoryBuffer buffer(h, config.window);
  HistoryStack stack(p, StackOptions{config.stack_size, config.target,
                                     config.kappa, config.improvement});

  Vector y(n + p);
  y << config.x0, config.theta_hat0;

  Matrix y_of_x(n, p);
  auto input = [&](double t, const Vector& x, const Vector& th,
                   const Matrix& yx, TrajectoryPoint* ref) {
    *ref = scenario.trajectory(t);
    Vector v = ref->x_dot - yx * th - config.k * (x - ref->x);
    if (g.is_identity()) return v;
    return Vector(RightPseudoinverse(g.Eval(x)) * v);
  };
  auto actuation = [&](const Vector& x, const Vector& u) {
    if (g.is_identity()) return u;
    return Vector(g.Eval(x) * u);
  };

  // Per-step metric accumulators.
  double rms_sum = 0.0;
  std::int64_t rms_count = 0;
  double chatter_lo = std::numeric_limits<double>::infinity();
  double chatter_hi = -std::numeric_limits<double>::infinity();

  auto observe = [&](std::int64_t index, const Vector& x, const Vector& th,
                     const TrajectoryPoint& ref) {
    const double t = static_cast<double>(index) * h;
    const double e = (x - ref.x).norm();
    const double terr = (config.theta_true - th).norm();
    res.max_theta_norm = std::max(res.max_theta_norm, th.norm());
    // Small tolerance keeps grid times like 50.000000000001 inside.
    const double tol = 1e-9 * h;
    if (t >= config.rms_start - tol && t <= config.rms_end + tol) {
      rms_sum += e * e;
      ++rms_count;
    }
    if (t >= config.chatter_start - tol) {
      chatter_lo = std::min(chatter_lo, terr);
      chatter_hi = std::max(chatter_hi, terr);
    }
    if (t >= config.bound_start - tol) {
      res.z_limsup = std::max(res.z_limsup, std::hypot(e, terr));
    }
    if (index % config.decimate == 0) {
      res.times.push_back(t);
      res.e_norm.push_back(e);
      res.theta_err_norm.push_back(terr);
      const double lm = stack.full() ? stack.lambda_min() : 0.0;
      res.lambda_min.push_back(lm);
      if (res.target_time && stack.full()) {
        res.lambda_min_after_target =
            std::min(res.lambda_min_after_target.value_or(lm), lm);
      }
    }
  };

  // Sample at t = 0.
  {
    const Vector x = y.head(n);
    const Vector th = y.tail(p);
    basis.EvalY(x, &y_of_x);
    TrajectoryPoint ref;
    const Vector u = input(0.0, x, th, y_of_x, &ref);
    buffer.Push(x, y_of_x, actuation(x, u));
    observe(0, x, th, ref);
  }

  Matrix stage_y(n, p);
  for (std::int64_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const Vector sign = SignSelection(y.tail(p));
    const Matrix& ysum = stack.ysum();
    const Vector& usum = stack.usum();

    auto field = [&](double ts, const Vector& ys) {
      const Vector x = ys.head(n);
      const Vector th = ys.tail(p);
      basis.EvalY(x, &stage_y);
      TrajectoryPoint ref;
      const Vector u = input(ts, x, th, stage_y, &ref);
      Vector dy(n + p);
      dy.head(n) = stage_y * config.theta_true + actuation(x, u);
      if (options.freeze_estimate) {
        dy.tail(p).setZero();
      } else {
        dy.tail(p) = UpdateDirection(stage_y, x - ref.x, th, sign, gains, ysum,
                                     usum, projection_slack);
      }
      return dy;
    };
    y = Rk4Step(field, t, y, h);

    const std::int64_t index = k + 1;
    const double t_next = static_cast<double>(index) * h;
    const Vector x = y.head(n);
    const Vector th = y.tail(p);
    basis.EvalY(x, &y_of_x);
    TrajectoryPoint ref;
    const Vector u = input(t_next, x, th, y_of_x, &ref);
    buffer.Push(x, y_of_x, actuation(x, u));

    if (index > window_steps) {
      FilteredPair fp = buffer.Filtered(t_next, config.window);
      res.max_filter_residual = std::max(
          res.max_filter_residual, (fp.uf - fp.yf * config.theta_true).norm());
      if (index % stride != 0) {
        observe(index, x, th, ref);
        continue;
      }
      ++res.offered;
      const InsertResult ins =
          stack.Offer(StackEntry{t_next, std::move(fp.yf), std::move(fp.uf)});
      if (ins.accepted) {
        ++res.accepted;
        if (options.track_every_insertion) {
          const double lm = stack.full() ? stack.lambda_min() : 0.0;
          res.stack_events.push_back(
              {t_next, ins.replaced_index.value_or(-1), lm});
          if (res.target_time && stack.full()) {
            res.lambda_min_after_target =
                std::min(res.lambda_min_after_target.value_or(lm), lm);
          }
        }
      }
      if (!res.target_time && stack.full() && stack.target_met()) {
        res.target_time = t_next;
        res.lambda_min_after_target = stack.lambda_min();
      }
    }
    observe(index, x, th, ref);
  }

  res.theta_hat_final = y.tail(p);
  res.theta_err_final = (config.theta_true - res.theta_hat_final).norm();
  res.rms_e = rms_count > 0 ? std::sqrt(rms_sum / static_cast<double>(rms_count))
                            : 0.0;
  res.chatter_p2p = chatter_hi >= chatter_lo ? chatter_hi - chatter_lo : 0.0;
  res.lambda_min_final = stack.full() ? stack.lambda_min() : 0.0;
  return res;
}

std::vector<bool> ClassifySparsity(const Vector& theta, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("ClassifySparsity: tau must be > 0");
  std::vector<bool> mask(static_cast<std::size_t>(theta.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    mask[static_cast<std::size_t>(i)] = std::abs(theta(i)) > tau;
  }
  return mask;
}

ConfusionCounts Confusion(const std::vector<bool>& predicted,
                          const std::vector<bool>& truth) {
  if (predicted.size() != truth.size()) {
    throw DimensionError("Confusion: mask lengths differ");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i]) {
      predicted[i] ? ++c.tp : ++c.fn;
    } else {
      predicted[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

RecoveryMetrics PrecisionRecallF1(int tp, int fp, int fn) {
  RecoveryMetrics m;
  if (tp + fp > 0) m.precision = static_cast<double>(tp) / (tp + fp);
  if (tp + fn > 0) m.recall = static_cast<double>(tp) / (tp + fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0.0) {
    m.f1 = 2.0 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  return m;
}

std::vector<double> DefaultLambdaGrid() {
  return {0.0, 1e-5, 1e-4, 1e-3, 5e-3, 1e-2, 5e-2, 1e-1};
}

SweepRow SummarizeRun(const RunResult& run, const SimConfig& config) {
  SweepRow row;
  row.lambda = run.lambda;
  const std::vector<bool> predicted =
      ClassifySparsity(run.theta_hat_final, config.threshold);
  std::vector<bool> truth(predicted.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    truth[i] = config.theta_true(static_cast<Eigen::Index>(i)) != 0.0;
  }
  row.nonzeros = static_cast<int>(
      std::count(predicted.begin(), predicted.end(), true));
  row.counts = Confusion(predicted, truth);
  row.metrics = PrecisionRecallF1(row.counts.tp, row.counts.fp, row.counts.fn);
  row.rms_e = run.rms_e;
  row.theta_err_final = run.theta_err_final;
  row.max_theta_norm = run.max_theta_norm;
  row.chatter_p2p = run.chatter_p2p;
  row.z_limsup = run.z_limsup;
  row.ultimate_bound = run.gains.ultimate_bound;
  row.gains_pass = run.gains.passes_proof();
  row.lambda_min_final = run.lambda_min_final;
  row.target_time = run.target_time;
  row.theta_hat_final = run.theta_hat_final;
  return row;
}

SweepReport LambdaSweep(const SimConfig& config, const Scenario& scenario,
                        const std::vector<double>& lambdas, int workers,
                        const RunCallback& on_run, const RunOptions& options) {
  for (double l : lambdas) {
    if (!(l >= 0.0)) throw ConfigError("lambda must be >= 0", "[estimator].lambda");
  }
  SweepReport report;
  report.rows.resize(lambdas.size());
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    for (std::size_t i = next++; i < lambdas.size(); i = next++) {
      SimConfig c = config;
      c.lambda = lambdas[i];
      SweepRow row;
      try {
        const RunResult run = RunScenario(c, scenario, options);
        row = SummarizeRun(run, c);
        if (on_run) on_run(c.lambda, &run, row);
      } catch (const Error& e) {
        row = SweepRow{};
        row.lambda = c.lambda;
        row.ok = false;
        row.error = e.what();
        if (on_run) on_run(c.lambda, nullptr, row);
      }
      report.rows[i] = std::move(row);
    }
  };

  const int count = std::max(1, std::min<int>(workers, static_cast<int>(lambdas.size())));
  if (count == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }
  return report;
}

}  // namespace spicl
