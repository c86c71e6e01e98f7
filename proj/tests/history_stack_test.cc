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

#include "spicl/history_stack.h"

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "spicl/errors.h"

namespace spicl {
namespace {

double EigMin(const Matrix& s) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(s).eigenvalues()(0);
}

// Independent normalization: sum over entries of Yf^T Yf / (1 + k ||Yf||^2).
Matrix BruteSum(const std::vector<StackEntry>& entries, int p, double kappa) {
  Matrix s = Matrix::Zero(p, p);
  for (const StackEntry& e : entries) {
    s += e.yf.transpose() * e.yf / (1.0 + kappa * e.yf.squaredNorm());
  }
  return s;
}

StackEntry RandomEntry(int n, int p, double scale, std::mt19937* rng) {
  std::normal_distribution<double> nd;
  StackEntry e;
  e.yf.resize(n, p);
  for (int i = 0; i < e.yf.size(); ++i) e.yf.data()[i] = scale * nd(*rng);
  e.uf.resize(n);
  for (int i = 0; i < n; ++i) e.uf(i) = nd(*rng);
  return e;
}

TEST(NormalizedTermsTest, ZeroRegressor) {
  StackEntry e{0.0, Matrix::Zero(2, 3), Vector::Ones(2)};
  const NormalizedTerms t = ComputeNormalizedTerms(e, 0.01);
  EXPECT_EQ(t.yty.norm(), 0.0);
  EXPECT_EQ(t.ytu.norm(), 0.0);
}

TEST(NormalizedTermsTest, ScalarHandValue) {
  StackEntry e{0.0, Matrix::Ones(1, 1), Vector::Constant(1, 2.0)};
  const NormalizedTerms t = ComputeNormalizedTerms(e, 1.0);
  EXPECT_DOUBLE_EQ(t.yty(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(t.ytu(0), 1.0);
}

TEST(NormalizedTermsTest, DenominatorUsesFrobeniusNorm) {
  Matrix yf(2, 2);
  yf << 1, 2, 3, 4;  // ||Yf||_F^2 = 30
  StackEntry e{0.0, yf, Vector::Ones(2)};
  const NormalizedTerms t = ComputeNormalizedTerms(e, 0.01);
  EXPECT_LT((t.yty - yf.transpose() * yf / 1.3).norm(), 1e-13);
  EXPECT_LT((t.ytu - yf.transpose() * Vector::Ones(2) / 1.3).norm(), 1e-13);
}

TEST(AssembleTest, AllZeroEntries) {
  std::vector<StackEntry> entries(4, StackEntry{0.0, Matrix::Zero(2, 3),
                                                Vector::Zero(2)});
  const MemoryRegressor mr = Assemble(entries, 3, 0.01);
  EXPECT_EQ(mr.ysum.norm(), 0.0);
  EXPECT_EQ(mr.usum.norm(), 0.0);
  EXPECT_EQ(mr.lambda_min, 0.0);
}

TEST(AssembleTest, SingleConsistentEntry) {
  const double theta = -1.7;
  std::vector<StackEntry> entries{
      StackEntry{0.0, Matrix::Ones(1, 1), Vector::Constant(1, theta)}};
  // kappa must be positive in the stack; Assemble itself accepts zero.
  const MemoryRegressor mr = Assemble(entries, 1, 0.0);
  EXPECT_DOUBLE_EQ(mr.ysum(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(mr.usum(0), theta);
}

TEST(AssembleTest, ConsistentPairsGiveConsistentSums) {
  // Uf = Yf theta for every entry implies Usum = Ysum theta.
  std::mt19937 rng(21);
  Vector theta(4);
  theta << 1, -2, 0.5, 0;
  std::vector<StackEntry> entries;
  for (int i = 0; i < 6; ++i) {
    StackEntry e = RandomEntry(2, 4, 3.0, &rng);
    e.uf = e.yf * theta;
    entries.push_back(e);
  }
  const MemoryRegressor mr = Assemble(entries, 4, 0.01);
  EXPECT_LT((mr.usum - mr.ysum * theta).norm(), 1e-12);
  EXPECT_NEAR(mr.lambda_min, EigMin(mr.ysum), 1e-10);
}

TEST(HistoryStackTest, ZeroStackAcceptsInformativeCandidate) {
  HistoryStack stack(2, StackOptions{3, 0.5, 0.01, 1.01});
  for (int i = 0; i < 3; ++i) {
    stack.Offer(StackEntry{0.1 * i, Matrix::Zero(2, 2), Vector::Zero(2)});
  }
  ASSERT_TRUE(stack.full());
  EXPECT_EQ(stack.lambda_min(), 0.0);
  const InsertResult r =
      stack.TryInsert(StackEntry{1.0, Matrix::Identity(2, 2), Vector::Ones(2)});
  EXPECT_TRUE(r.accepted);
  ASSERT_TRUE(r.replaced_index.has_value());
  EXPECT_EQ(*r.replaced_index, 0);  // oldest slot
  EXPECT_GT(stack.lambda_min(), 0.0);
  EXPECT_DOUBLE_EQ(stack.entries().back().t, 1.0);
}

TEST(HistoryStackTest, ZeroCandidateRejectedUnderImprovementRule) {
  std::mt19937 rng(2);
  HistoryStack stack(3, StackOptions{4, 100.0, 0.01, 1.01});
  for (int i = 0; i < 4; ++i) stack.Offer(RandomEntry(3, 3, 1.0, &rng));
  const double before = stack.lambda_min();
  ASSERT_LT(before, 100.0);
  const Matrix ysum = stack.ysum();
  const InsertResult r =
      stack.TryInsert(StackEntry{9.0, Matrix::Zero(3, 3), Vector::Zero(3)});
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(stack.ysum(), ysum);
  EXPECT_DOUBLE_EQ(stack.lambda_min(), before);
}

TEST(HistoryStackTest, DuplicateOfNewestAcceptedOnceTargetMet) {
  // Two identity-like blocks per axis: the target stays met after any one
  // removal, so the oldest slot is replaced.
  const double kappa = 0.01;
  HistoryStack stack(2, StackOptions{4, 0.5, kappa, 1.01});
  std::vector<StackEntry> entries;
  for (int i = 0; i < 4; ++i) {
    Matrix yf = Matrix::Zero(1, 2);
    yf(0, i % 2) = 1.0;
    entries.push_back(StackEntry{static_cast<double>(i), yf, Vector::Ones(1)});
    stack.Offer(entries.back());
  }
  ASSERT_TRUE(stack.target_met());
  StackEntry dup = entries.back();
  dup.t = 10.0;
  const InsertResult r = stack.TryInsert(dup);
  ASSERT_TRUE(r.accepted);

  // Brute force: first j whose replacement keeps lambda_min >= target.
  int expected = -1;
  for (int j = 0; j < 4; ++j) {
    std::vector<StackEntry> trial = entries;
    trial[j] = dup;
    if (EigMin(BruteSum(trial, 2, kappa)) >= 0.5) {
      expected = j;
      break;
    }
  }
  EXPECT_EQ(*r.replaced_index, expected);
  EXPECT_GE(stack.lambda_min(), 0.5);
}

TEST(HistoryStackTest, MatchesBruteForceAlgorithm) {
  // Replays random offers against an independent implementation of the
  // replacement rule; also checks the incremental sums against a rebuild.
  const int n = 2, p = 4, cap = 5;
  const double target = 1.5, kappa = 0.01, delta = 1.01;
  std::mt19937 rng(99);
  HistoryStack stack(p, StackOptions{cap, target, kappa, delta});
  std::vector<StackEntry> mirror;
  bool met = false;
  for (int k = 0; k < 300; ++k) {
    StackEntry c = RandomEntry(n, p, 0.3 + 0.01 * k, &rng);
    c.t = k;
    const InsertResult r = stack.Offer(c);
    if (static_cast<int>(mirror.size()) < cap) {
      EXPECT_TRUE(r.accepted);
      EXPECT_FALSE(r.replaced_index.has_value());
      mirror.push_back(c);
      met = EigMin(BruteSum(mirror, p, kappa)) >= target;
      continue;
    }
    const double current = EigMin(BruteSum(mirror, p, kappa));
    int expected = -1;
    for (int j = 0; j < cap && expected < 0; ++j) {
      std::vector<StackEntry> trial = mirror;
      trial[j] = c;
      const double lm = EigMin(BruteSum(trial, p, kappa));
      if (met ? lm >= target : lm > delta * current) expected = j;
    }
    ASSERT_EQ(r.accepted, expected >= 0) << "offer " << k;
    if (expected >= 0) {
      ASSERT_EQ(*r.replaced_index, expected) << "offer " << k;
      mirror.erase(mirror.begin() + expected);
      mirror.push_back(c);
      const double after = EigMin(BruteSum(mirror, p, kappa));
      if (met) {
        EXPECT_GE(after, target - 1e-12);
      } else {
        EXPECT_GT(after, delta * current);
      }
      met = met || after >= target;
    }
    ASSERT_EQ(stack.entries().size(), mirror.size());
    for (int j = 0; j < cap; ++j) {
      EXPECT_EQ(stack.entries()[j].t, mirror[j].t);
    }
    const MemoryRegressor rebuilt = Assemble(stack.entries(), p, kappa);
    EXPECT_LT((rebuilt.ysum - stack.ysum()).norm(), 1e-10);
    EXPECT_LT((rebuilt.usum - stack.usum()).norm(), 1e-10);
    EXPECT_NEAR(stack.lambda_min(), EigMin(stack.ysum()), 1e-9);
  }
  EXPECT_TRUE(met);
}

TEST(HistoryStackTest, LambdaMinNeverDropsBelowTargetOnceMet) {
  std::mt19937 rng(4);
  HistoryStack stack(3, StackOptions{6, 1.0, 0.01, 1.01});
  bool seen = false;
  for (int k = 0; k < 400; ++k) {
    stack.Offer(RandomEntry(2, 3, 2.0, &rng));
    if (!stack.full()) continue;
    if (seen) {
      EXPECT_GE(stack.lambda_min(), 1.0 - 1e-12);
    }
    seen = seen || stack.lambda_min() >= 1.0;
  }
  EXPECT_TRUE(seen);
}

TEST(HistoryStackTest, RejectsBadOptions) {
  EXPECT_THROW(HistoryStack(2, StackOptions{0, 0.5, 0.01, 1.01}),
               ContractViolation);
  EXPECT_THROW(HistoryStack(2, StackOptions{3, 0.5, 0.0, 1.01}),
               ContractViolation);
  EXPECT_THROW(HistoryStack(2, StackOptions{3, 0.5, 0.01, 0.9}),
               ContractViolation);
  HistoryStack stack(2, StackOptions{3, 0.5, 0.01, 1.01});
  EXPECT_THROW(stack.TryInsert(StackEntry{0.0, Matrix::Zero(1, 2),
                                          Vector::Zero(1)}),
               ContractViolation);
}

}  // namespace
}  // namespace spicl
