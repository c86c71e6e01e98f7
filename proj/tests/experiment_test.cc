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

#include <cmath>

#include <gtest/gtest.h>

#include "spicl/errors.h"
#include "spicl/report.h"

namespace spicl {
namespace {

// Short demo variant: metric windows scaled into [0, t_final].
SimConfig ShortDemo(double t_final) {
  SimConfig c = SimConfig::Demo();
  c.t_final = t_final;
  c.rms_start = 0.5 * t_final;
  c.rms_end = t_final;
  c.chatter_start = 0.9 * t_final;
  c.bound_start = 0.75 * t_final;
  return c;
}

std::vector<bool> Mask(std::initializer_list<int> on, int p = 20) {
  std::vector<bool> m(p, false);
  for (int i : on) m[i] = true;
  return m;
}

TEST(TrajectoryTest, InitialValues) {
  const TrajectoryPoint p = DemoTrajectory(0.0);
  EXPECT_EQ(p.x.norm(), 0.0);
  EXPECT_NEAR(p.x_dot(0), 1.16, 1e-15);
  EXPECT_NEAR(p.x_dot(1), 2.22, 1e-15);
}

TEST(TrajectoryTest, DerivativeMatchesCentralDifference) {
  const double h = 1e-5;
  for (double t = 0.0; t < 7.0; t += 0.37) {
    const Vector fd =
        (DemoTrajectory(t + h).x - DemoTrajectory(t - h).x) / (2 * h);
    EXPECT_LT((fd - DemoTrajectory(t).x_dot).norm(), 1e-8) << t;
  }
}

TEST(SparsityTest, ZeroEstimate) {
  const std::vector<bool> m = ClassifySparsity(Vector::Zero(20), 0.05);
  EXPECT_EQ(m, Mask({}));
}

TEST(SparsityTest, TrueCoefficientsRecoverSupport) {
  const SimConfig c = SimConfig::Demo();
  // 0-based positions of the five nonzero demo coefficients.
  EXPECT_EQ(ClassifySparsity(c.theta_true, 0.1), Mask({1, 2, 11, 15, 17}));
}

TEST(SparsityTest, LargeThresholdEmptiesMask) {
  const Vector th = Vector::LinSpaced(20, -0.4, 0.3);
  EXPECT_EQ(ClassifySparsity(th, 0.41), Mask({}));
  // Ties fall on the zero side.
  Vector one = Vector::Zero(20);
  one(3) = 0.05;
  EXPECT_EQ(ClassifySparsity(one, 0.05), Mask({}));
}

TEST(ConfusionTest, PerfectRecovery) {
  const std::vector<bool> truth = Mask({1, 2, 11, 15, 17});
  const ConfusionCounts c = Confusion(truth, truth);
  EXPECT_EQ(c.tp, 5);
  EXPECT_EQ(c.fp, 0);
  EXPECT_EQ(c.fn, 0);
  EXPECT_EQ(c.tn, 15);
}

TEST(ConfusionTest, ReferenceOutcomes) {
  const std::vector<bool> truth = Mask({1, 2, 11, 15, 17});
  const ConfusionCounts dense =
      Confusion(Mask({1, 2, 11, 15, 17, 0, 3, 4, 6, 9, 10, 12}), truth);
  EXPECT_EQ(dense.tp, 5);
  EXPECT_EQ(dense.fp, 7);
  EXPECT_EQ(dense.fn, 0);
  EXPECT_EQ(dense.tn, 8);
  const ConfusionCounts sparse = Confusion(Mask({1, 2, 11, 15}), truth);
  EXPECT_EQ(sparse.tp, 4);
  EXPECT_EQ(sparse.fp, 0);
  EXPECT_EQ(sparse.fn, 1);
  EXPECT_EQ(sparse.tn, 15);
  EXPECT_EQ(sparse.total(), 20);
}

TEST(ConfusionTest, LengthMismatchThrows) {
  EXPECT_THROW(Confusion(Mask({}, 3), Mask({}, 4)), DimensionError);
}

TEST(PrecisionRecallTest, TableValues) {
  const RecoveryMetrics a = PrecisionRecallF1(4, 0, 1);
  EXPECT_NEAR(*a.precision, 1.00, 1e-12);
  EXPECT_NEAR(*a.recall, 0.80, 1e-12);
  EXPECT_NEAR(a.f1, 0.89, 0.005);
  const RecoveryMetrics b = PrecisionRecallF1(5, 7, 0);
  EXPECT_NEAR(*b.precision, 0.42, 0.005);
  EXPECT_NEAR(*b.recall, 1.00, 1e-12);
  EXPECT_NEAR(b.f1, 0.59, 0.005);
  const RecoveryMetrics c = PrecisionRecallF1(0, 0, 5);
  EXPECT_FALSE(c.precision.has_value());
  EXPECT_NEAR(*c.recall, 0.0, 1e-15);
  EXPECT_EQ(c.f1, 0.0);
}

TEST(PrecisionRecallTest, HarmonicMeanOracle) {
  for (int tp = 1; tp < 6; ++tp) {
    for (int fp = 0; fp < 6; ++fp) {
      for (int fn = 0; fn < 6; ++fn) {
        const double p = tp / double(tp + fp), r = tp / double(tp + fn);
        EXPECT_NEAR(PrecisionRecallF1(tp, fp, fn).f1, 2 * p * r / (p + r),
                    1e-12);
      }
    }
  }
}

TEST(LambdaGridTest, EightValuesAscending) {
  const std::vector<double> g = DefaultLambdaGrid();
  const std::vector<double> expected{0, 1e-5, 1e-4, 1e-3, 5e-3, 1e-2, 5e-2, 1e-1};
  EXPECT_EQ(g, expected);
}

TEST(SimConfigTest, DemoValidates) {
  const Scenario s = Scenario::Demo();
  EXPECT_NO_THROW(SimConfig::Demo().Validate(2, 20));
  EXPECT_EQ(SimConfig::Demo().steps(), 100000);
  EXPECT_EQ(SimConfig::Demo().offer_stride(), 50);
  SimConfig every = SimConfig::Demo();
  every.offer_interval = 0.0;
  EXPECT_EQ(every.offer_stride(), 1);
  (void)s;
}

TEST(SimConfigTest, ValidationNamesKey) {
  SimConfig c = SimConfig::Demo();
  c.k(0, 1) = 1.0;
  try {
    c.Validate(2, 20);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "[controller].K");
  }
  c = SimConfig::Demo();
  c.theta_hat0 = Vector::Constant(20, 2.0);  // norm ~8.9 > 5.5
  EXPECT_THROW(c.Validate(2, 20), ConfigError);
}

TEST(RunScenarioTest, ExactModelEquilibrium) {
  SimConfig c = ShortDemo(10.0);
  c.x0 = Vector::Zero(2);
  c.theta_hat0 = c.theta_true;
  c.decimate = 1;
  const RunResult r = RunScenario(c, Scenario::Demo());
  double e_max = 0.0, terr_max = 0.0;
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    e_max = std::max(e_max, r.e_norm[i]);
    terr_max = std::max(terr_max, r.theta_err_norm[i]);
  }
  EXPECT_LE(e_max, 10.0 * c.step);
  EXPECT_LE(terr_max, 1e-3);
}

TEST(RunScenarioTest, HigherFeedbackGainReducesTrackingError) {
  const SimConfig base = ShortDemo(20.0);
  SimConfig high = base;
  high.k *= 10.0;
  const RunResult a = RunScenario(base, Scenario::Demo());
  const RunResult b = RunScenario(high, Scenario::Demo());
  EXPECT_LT(b.rms_e, a.rms_e);
}

TEST(RunScenarioTest, FilterResidualSmallOnDemo) {
  const RunResult r = RunScenario(ShortDemo(5.0), Scenario::Demo());
  EXPECT_GT(r.offered, 0);
  EXPECT_LT(r.max_filter_residual, 1e-4);
}

TEST(RunScenarioTest, FrozenEstimateKeepsInitialGuess) {
  RunOptions opt;
  opt.freeze_estimate = true;
  const RunResult r = RunScenario(ShortDemo(2.0), Scenario::Demo(), opt);
  EXPECT_EQ(r.theta_hat_final, SimConfig::Demo().theta_hat0);
}

TEST(RunScenarioTest, DemoParameterErrorNearReference) {
  const RunResult r = RunScenario(SimConfig::Demo(), Scenario::Demo());
  EXPECT_NEAR(r.theta_err_final, 0.88263, 0.3 * 0.88263);
  EXPECT_LE(r.max_theta_norm, 5.5 + 10 * 1e-3);
}

TEST(RunScenarioTest, DivergenceSurfacesInSweepRow) {
  SimConfig c = ShortDemo(5.0);
  c.k *= 1e4;  // RK4 is unstable for h * k = 100
  const SweepReport rep = LambdaSweep(c, Scenario::Demo(), {0.0}, 1);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_FALSE(rep.rows[0].ok);
  EXPECT_FALSE(rep.rows[0].error.empty());
}

TEST(LambdaSweepTest, WorkerCountDoesNotChangeResults) {
  const SimConfig c = ShortDemo(3.0);
  const std::vector<double> lambdas{0.0, 1e-2, 1e-1};
  const std::string one =
      FormatSweepTable(LambdaSweep(c, Scenario::Demo(), lambdas, 1));
  const std::string three =
      FormatSweepTable(LambdaSweep(c, Scenario::Demo(), lambdas, 3));
  EXPECT_EQ(one, three);
}

TEST(LambdaSweepTest, RowsFollowInputOrder) {
  const SimConfig c = ShortDemo(1.0);
  const SweepReport rep =
      LambdaSweep(c, Scenario::Demo(), {1e-1, 0.0, 1e-3}, 2);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_EQ(rep.rows[0].lambda, 1e-1);
  EXPECT_EQ(rep.rows[1].lambda, 0.0);
  EXPECT_EQ(rep.rows[2].lambda, 1e-3);
}

TEST(SummarizeRunTest, TruthMaskFromTrueCoefficients) {
  RunResult run;
  run.lambda = 0.01;
  run.theta_hat_final = SimConfig::Demo().theta_true;
  const SweepRow row = SummarizeRun(run, SimConfig::Demo());
  EXPECT_EQ(row.nonzeros, 5);
  EXPECT_EQ(row.counts.tp, 5);
  EXPECT_EQ(row.counts.tn, 15);
  EXPECT_NEAR(row.metrics.f1, 1.0, 1e-15);
}

TEST(ReportTest, LambdaDirectoryNames) {
  EXPECT_EQ(LambdaDirName(0.0), "lambda_0");
  EXPECT_EQ(LambdaDirName(5e-3), "lambda_0p005");
  EXPECT_EQ(LambdaDirName(1e-5), "lambda_1e-05");
}

TEST(ReportTest, UndefinedPrecisionPrintsDashes) {
  SweepReport rep;
  SweepRow row;
  row.lambda = 0.1;
  row.counts = ConfusionCounts{0, 0, 5, 15};
  row.metrics = PrecisionRecallF1(0, 0, 5);
  rep.rows.push_back(row);
  const std::string table = FormatSweepTable(rep);
  EXPECT_NE(table.find("\t--\t0.00\t0.00\t"), std::string::npos) << table;
}

}  // namespace
}  // namespace spicl
