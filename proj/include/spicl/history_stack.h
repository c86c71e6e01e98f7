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

#ifndef SPICL_HISTORY_STACK_H_
#define SPICL_HISTORY_STACK_H_

#include <optional>
#include <span>
#include <vector>

#include "spicl/types.h"

namespace spicl {

// One stored filtered pair.
struct StackEntry {
  double t = 0.0;
  Matrix yf;  // n x p
  Vector uf;  // n
};

// Memory regressor extension: normalized sums over the stack,
//   Ysum = sum Yf^T Yf / (1 + kappa ||Yf||_F^2),
//   Usum = sum Yf^T Uf / (1 + kappa ||Yf||_F^2).
struct MemoryRegressor {
  Matrix ysum;  // p x p, symmetric PSD
  Vector usum;  // p
  double kappa = 0.0;
  double lambda_min = 0.0;
};

struct NormalizedTerms {
  Matrix yty;  // Yf^T Yf / (1 + kappa ||Yf||_F^2)
  Vector ytu;  // Yf^T Uf / (1 + kappa ||Yf||_F^2)
};

NormalizedTerms ComputeNormalizedTerms(const StackEntry& entry, double kappa);

// Sums normalized terms over all entries and caches lambda_min (Jacobi).
// param_dim sizes the result when entries is empty.
MemoryRegressor Assemble(std::span<const StackEntry> entries, int param_dim,
                         double kappa);

struct StackOptions {
  int capacity = 20;         // N
  double target = 0.5;       // eigenvalue target y_bar
  double kappa = 0.01;       // normalization gain
  double improvement = 1.01; // delta >= 1
};

struct InsertResult {
  bool accepted = false;
  // 0-based slot that was vacated (entries after it shift down one slot and
  // the candidate lands in the last slot). Empty while filling.
  std::optional<int> replaced_index;
};

// Fixed-capacity store of filtered pairs with the eigenvalue-driven
// replacement policy:
//  * the first N candidates are stored unconditionally;
//  * target met (lambda_min >= y_bar): replace the oldest j for which the
//    stack with entry j swapped for the candidate still meets the target;
//  * target not met: replace the oldest j for which the swap raises
//    lambda_min above delta * lambda_min(current).
// Accepted candidates always enter at the newest slot.
class HistoryStack {
 public:
  HistoryStack(int param_dim, StackOptions options);

  // Fills while fewer than N entries are stored, then defers to TryInsert.
  InsertResult Offer(StackEntry candidate);

  // Replacement step on a full stack. Throws ContractViolation if the stack
  // is not full.
  InsertResult TryInsert(StackEntry candidate);

  bool full() const {
    return static_cast<int>(entries_.size()) == options_.capacity;
  }
  const std::vector<StackEntry>& entries() const { return entries_; }
  const StackOptions& options() const { return options_; }
  int param_dim() const { return param_dim_; }

  const Matrix& ysum() const { return ysum_; }
  const Vector& usum() const { return usum_; }

  // lambda_min of Ysum; computed on demand and cached until the next
  // accepted insertion.
  double lambda_min() const;
  bool target_met() const;

  // Snapshot with lambda_min filled in.
  MemoryRegressor regressor() const;

 private:
  void Rebuild();
  void Place(int vacated, StackEntry candidate, NormalizedTerms terms);

  int param_dim_;
  StackOptions options_;
  std::vector<StackEntry> entries_;
  std::vector<NormalizedTerms> terms_;
  Matrix ysum_;
  Vector usum_;
  mutable std::optional<double> lambda_min_;
  // Known to hold after a target-preserving replacement even when
  // lambda_min_ has not been recomputed.
  bool target_known_met_ = false;
};

}  // namespace spicl

#endif  // SPICL_HISTORY_STACK_H_
