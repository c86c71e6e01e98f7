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

#ifndef SPICL_REPORT_H_
#define SPICL_REPORT_H_

#include <string>
#include <vector>

#include "spicl/controller.h"
#include "spicl/experiment.h"

namespace spicl {

// Two whitespace-separated columns "t value", one row per sample.
std::string FormatSeries(const std::vector<double>& times,
                         const std::vector<double>& values);

// Tab-separated sweep table with a header row. Undefined precision or recall
// prints as "--". Failed runs keep every column and set status=failed.
std::string FormatSweepTable(const SweepReport& report);

// One block per lambda with TP/FP/FN/TN and derived metrics.
std::string FormatConfusionBlocks(const SweepReport& report);

std::string FormatGainReport(const GainReport& report);

// key = value summary of a single run.
std::string FormatRunSummary(const RunResult& run, const SweepRow& row,
                             const SimConfig& config);

// "time replaced_index lambda_min" per accepted insertion.
std::string FormatStackEvents(const std::vector<StackEvent>& events);

// Directory name for a lambda value: lambda_0, lambda_0p005, lambda_1e-05.
std::string LambdaDirName(double lambda);

// Writes text to path, creating parent directories. Throws IoError.
void WriteTextFile(const std::string& path, const std::string& text);

// Files for one run in dir: tracking_error_norm.dat,
// parameter_estimation_error_norm.dat, summary.txt, gain_report.txt,
// stack_events.dat (when events were tracked).
void WriteRunFiles(const std::string& dir, const RunResult& run,
                   const SweepRow& row, const SimConfig& config);

}  // namespace spicl

#endif  // SPICL_REPORT_H_
