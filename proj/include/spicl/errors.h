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

#ifndef SPICL_ERRORS_H_
#define SPICL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

#include "spicl/types.h"

namespace spicl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector or matrix shape does not match the configured scenario.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class RankDeficiencyError : public Error {
 public:
  using Error::Error;
};

// A delayed-state query fell outside the buffered time range.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A documented precondition or runtime invariant was violated.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// The simulated state became non-finite.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time, Vector last_state)
      : Error(what), time_(time), last_state_(std::move(last_state)) {}

  double time() const { return time_; }
  const Vector& last_state() const { return last_state_; }

 private:
  double time_;
  Vector last_state_;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Configuration text could not be parsed or failed validation. line() is 0
// when the problem is not tied to a line (e.g. a --set override).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key, int line = 0)
      : Error(what), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

}  // namespace spicl

#endif  // SPICL_ERRORS_H_
