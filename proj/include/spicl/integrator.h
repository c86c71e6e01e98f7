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

#ifndef SPICL_INTEGRATOR_H_
#define SPICL_INTEGRATOR_H_

#include <cstdint>
#include <deque>
#include <string>

#include "spicl/errors.h"
#include "spicl/types.h"

namespace spicl {

// Classical fourth-order Runge-Kutta step of y' = f(t, y).
//
// Any discontinuous selection inside f must be fixed by the caller before the
// step; the four stages see the same selection. Throws DivergenceError
// stamped with t + h if the result has a non-finite component.
template <typename Field>
Vector Rk4Step(Field&& f, double t, const Vector& y, double h) {
  const double half = 0.5 * h;
  const Vector k1 = f(t, y);
  const Vector k2 = f(t + half, y + half * k1);
  const Vector k3 = f(t + half, y + half * k2);
  const Vector k4 = f(t + h, y + h * k3);
  Vector next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    throw DivergenceError(
        "integration diverged at t = " + std::to_string(t + h), t + h, y);
  }
  return next;
}

// Sliding-window filtered data at time t. Both are zero while t < T.
struct FilteredPair {
  double t = 0.0;
  Matrix yf;  // n x p, integral of Y(x) over [t - T, t]
  Vector uf;  // n,     x(t) - x(t - T) - integral of g(x) u over [t - T, t]
};

// Uniform-grid record of the state together with running trapezoid integrals
// of Y(x) and g(x) u. Sample k sits at t0 + k*h exactly. Only the trailing
// window (plus slack) is retained.
class HistoryBuffer {
 public:
  struct Sample {
    double t;
    Vector x;
    Matrix cum_y;
    Vector cum_gu;
  };

  // retain_span is the minimum time span kept behind the newest sample;
  // retention is max(retain_span, 2h) + 10h.
  HistoryBuffer(double step, double retain_span, double t0 = 0.0);

  // Appends the sample at the next grid time. y_of_x = Y(x), gu = g(x) u.
  void Push(const Vector& x, const Matrix& y_of_x, const Vector& gu);

  double step() const { return step_; }
  std::int64_t steps() const { return next_index_ - 1; }
  bool empty() const { return samples_.empty(); }
  double now() const;
  double oldest() const;
  const Sample& newest() const { return samples_.back(); }
  std::size_t size() const { return samples_.size(); }

  // State at t_query by linear interpolation; exact on grid points.
  // Throws LookupError outside [oldest(), now()].
  Vector DelayedState(double t_query) const;

  // Interpolated (x, cum_y, cum_gu) at t_query.
  Sample Interpolate(double t_query) const;

  // Filtered pair at time t for window T: zeros when t < T, otherwise
  // Yf = cum_y(t) - cum_y(t - T) and Uf = x(t) - x(t - T) - (cum_gu(t) -
  // cum_gu(t - T)).
  FilteredPair Filtered(double t, double window) const;

 private:
  double TimeAt(std::int64_t index) const {
    return t0_ + static_cast<double>(index) * step_;
  }

  double step_;
  double retain_;
  double t0_;
  std::int64_t next_index_ = 0;
  std::int64_t front_index_ = 0;
  Matrix last_y_;
  Vector last_gu_;
  std::deque<Sample> samples_;
};

}  // namespace spicl

#endif  // SPICL_INTEGRATOR_H_
