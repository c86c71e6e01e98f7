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

#ifndef SPICL_CONFIG_H_
#define SPICL_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "spicl/experiment.h"

namespace spicl {

// Sectioned key-value scenario files:
//
//   # comment
//   [controller]
//   K = 10, 0; 0, 10     # matrices: rows separated by ';'
//   [estimator]
//   lambda = 0.01
//   Gamma = 1, 1, ...    # diagonal entries (or a full diagonal matrix)
//
// Sections: [plant], [controller], [estimator], [stack], [simulation],
// [metrics]. Keys absent from the file keep the SimConfig::Demo() values.
// Unknown sections or keys raise ConfigError naming the key and line.

// Parses on top of SimConfig::Demo().
SimConfig ParseConfig(std::string_view text);
SimConfig ParseConfig(std::string_view text, SimConfig base);

// Reads and parses a file. Throws IoError if it cannot be read.
SimConfig LoadConfig(const std::string& path);

// Applies "section.key=value", e.g. "estimator.lambda=0.01".
void ApplyOverride(SimConfig* config, std::string_view assignment);

// Writes every key; ParseConfig(SerializeConfig(c)) reproduces c exactly.
std::string SerializeConfig(const SimConfig& config);

bool SameConfig(const SimConfig& a, const SimConfig& b);

// All "section.key" names accepted by the parser.
std::vector<std::string> ConfigKeys();

}  // namespace spicl

#endif  // SPICL_CONFIG_H_
