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

#include "spicl/integrator.h"

#include <algorithm>
#include <cmath>

namespace spicl {

namespace {

// Relative distance to a grid node below which a query snaps to the node.
constexpr double kNodeSnap = 1e-9;

}  // namespace

HistoryBuffer::HistoryBuffer(double step, double retain_span, double t0)
    : step_(step), t0_(t0) {
  if (!(step > 0.0)) throw ContractViolation("HistoryBuffer: step must be > 0");
  retain_ = std::max(retain_span, 2.0 * step) + 10.0 * step;
}

void HistoryBuffer::Push(const Vector& x, const Matrix& y_of_x,
                         const Vector& gu) {
  Sample s;
  s.t = TimeAt(next_index_);
  s.x = x;
  if (samples_.empty()) {
    s.cum_y = Matrix::Zero(y_of_x.rows(), y_of_x.cols());
    s.cum_gu = Vector::Zero(gu.size());
  } else {
    const Sample& prev = samples_.back();
    const double half = 0.5 * step_;
    s.cum_y = prev.cum_y + half * (last_y_ + y_of_x);
    s.cum_gu = prev.cum_gu + half * (last_gu_ + gu);
  }
  last_y_ = y_of_x;
  last_gu_ = gu;
  samples_.push_back(std::move(s));
  ++next_index_;

  const double horizon = samples_.back().t - retain_;
  while (samples_.size() > 2 && TimeAt(front_index_ + 1) <= horizon) {
    samples_.pop_front();
    ++front_index_;
  }
}

double HistoryBuffer::now() const {
  if (samples_.empty()) throw LookupError("HistoryBuffer: empty");
  return samples_.back().t;
}

double HistoryBuffer::oldest() const {
  if (samples_.empty()) throw LookupError("HistoryBuffer: empty");
  return samples_.front().t;
}

HistoryBuffer::Sample HistoryBuffer::Interpolate(double t_query) const {
  if (samples_.empty()) throw LookupError("HistoryBuffer: empty");
  const double pos = (t_query - TimeAt(front_index_)) / step_;
  const double last = static_cast<double>(samples_.size() - 1);
  if (pos < -kNodeSnap || pos > last + kNodeSnap || !std::isfinite(pos)) {
    throw LookupError("HistoryBuffer: t = " + std::to_string(t_query) +
                      " outside buffered range [" + std::to_string(oldest()) +
                      ", " + std::to_string(now()) + "]");
  }
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) <= kNodeSnap) {
    return samples_[static_cast<std::size_t>(nearest)];
  }
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const double w = pos - static_cast<double>(lo);
  const Sample& a = samples_[lo];
  const Sample& b = samples_[lo + 1];
  Sample out;
  out.t = t_query;
  out.x = (1.0 - w) * a.x + w * b.x;
  out.cum_y = (1.0 - w) * a.cum_y + w * b.cum_y;
  out.cum_gu = (1.0 - w) * a.cum_gu + w * b.cum_gu;
  return out;
}

Vector HistoryBuffer::DelayedState(double t_query) const {
  if (t_query < 0.0 && t_query < t0_) {
    throw LookupError("HistoryBuffer: negative query time");
  }
  return Interpolate(t_query).x;
}

FilteredPair HistoryBuffer::Filtered(double t, double window) const {
  if (samples_.empty()) throw LookupError("HistoryBuffer: empty");
  const Sample& ref = samples_.back();
  FilteredPair fp;
  fp.t = t;
  // Window test in grid units so t = T lands on the filled branch exactly.
  if ((t - t0_) < window * (1.0 - 1e-12)) {
    fp.yf = Matrix::Zero(ref.cum_y.rows(), ref.cum_y.cols());
    fp.uf = Vector::Zero(ref.x.size());
    return fp;
  }
  const Sample head = Interpolate(t);
  const Sample tail = Interpolate(t - window);
  fp.yf = head.cum_y - tail.cum_y;
  fp.uf = head.x - tail.x - (head.cum_gu - tail.cum_gu);
  return fp;
}

}  // namespace spicl
