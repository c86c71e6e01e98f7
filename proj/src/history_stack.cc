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

#include <utility>

#include "spicl/errors.h"
#include "spicl/linalg.h"

namespace spicl {

NormalizedTerms ComputeNormalizedTerms(const StackEntry& entry, double kappa) {
  const double denom = 1.0 + kappa * entry.yf.squaredNorm();
  NormalizedTerms terms;
  terms.yty = (entry.yf.transpose() * entry.yf) / denom;
  terms.ytu = (entry.yf.transpose() * entry.uf) / denom;
  return terms;
}

MemoryRegressor Assemble(std::span<const StackEntry> entries, int param_dim,
                         double kappa) {
  MemoryRegressor mr;
  mr.kappa = kappa;
  mr.ysum = Matrix::Zero(param_dim, param_dim);
  mr.usum = Vector::Zero(param_dim);
  for (const StackEntry& e : entries) {
    const NormalizedTerms terms = ComputeNormalizedTerms(e, kappa);
    mr.ysum += terms.yty;
    mr.usum += terms.ytu;
  }
  mr.lambda_min = MinEigenvalue(mr.ysum);
  return mr;
}

HistoryStack::HistoryStack(int param_dim, StackOptions options)
    : param_dim_(param_dim),
      options_(options),
      ysum_(Matrix::Zero(param_dim, param_dim)),
      usum_(Vector::Zero(param_dim)) {
  if (options_.capacity < 1) throw ContractViolation("HistoryStack: N < 1");
  if (!(options_.kappa > 0.0)) throw ContractViolation("HistoryStack: kappa <= 0");
  if (!(options_.target > 0.0)) throw ContractViolation("HistoryStack: target <= 0");
  if (!(options_.improvement >= 1.0)) {
    throw ContractViolation("HistoryStack: improvement factor < 1");
  }
  entries_.reserve(static_cast<std::size_t>(options_.capacity));
  terms_.reserve(static_cast<std::size_t>(options_.capacity));
}

InsertResult HistoryStack::Offer(StackEntry candidate) {
  if (full()) return TryInsert(std::move(candidate));
  NormalizedTerms terms = ComputeNormalizedTerms(candidate, options_.kappa);
  ysum_ += terms.yty;
  usum_ += terms.ytu;
  entries_.push_back(std::move(candidate));
  terms_.push_back(std::move(terms));
  lambda_min_.reset();
  target_known_met_ = false;
  return {true, std::nullopt};
}

InsertResult HistoryStack::TryInsert(StackEntry candidate) {
  if (!full()) throw ContractViolation("HistoryStack::TryInsert: stack not full");
  NormalizedTerms terms = ComputeNormalizedTerms(candidate, options_.kappa);

  const bool met = target_met();
  // Branch A keeps lambda_min >= y_bar; branch B demands lambda_min >
  // delta * lambda_min(current). The strict Cholesky test stands in for the
  // non-strict >= in branch A; the two differ only on a measure-zero set.
  const double bound = met ? options_.target : options_.improvement * lambda_min();

  Matrix trial(param_dim_, param_dim_);
  for (int j = 0; j < options_.capacity; ++j) {
    trial = ysum_ - terms_[static_cast<std::size_t>(j)].yty + terms.yty;
    if (MinEigenvalueExceeds(trial, bound)) {
      Place(j, std::move(candidate), std::move(terms));
      if (met) {
        target_known_met_ = true;
      } else {
        target_known_met_ = false;
        lambda_min();  // branch B needs the exact value for the next offer
      }
      return {true, j};
    }
  }
  return {false, std::nullopt};
}

void HistoryStack::Place(int vacated, StackEntry candidate,
                         NormalizedTerms terms) {
  entries_.erase(entries_.begin() + vacated);
  terms_.erase(terms_.begin() + vacated);
  entries_.push_back(std::move(candidate));
  terms_.push_back(std::move(terms));
  Rebuild();
}

void HistoryStack::Rebuild() {
  ysum_.setZero();
  usum_.setZero();
  for (const NormalizedTerms& t : terms_) {
    ysum_ += t.yty;
    usum_ += t.ytu;
  }
  lambda_min_.reset();
}

double HistoryStack::lambda_min() const {
  if (!lambda_min_) lambda_min_ = MinEigenvalue(ysum_);
  return *lambda_min_;
}

bool HistoryStack::target_met() const {
  if (target_known_met_) return true;
  return lambda_min() >= options_.target;
}

MemoryRegressor HistoryStack::regressor() const {
  MemoryRegressor mr;
  mr.ysum = ysum_;
  mr.usum = usum_;
  mr.kappa = options_.kappa;
  mr.lambda_min = lambda_min();
  return mr;
}

}  // namespace spicl
