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

#include "spicl/report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "spicl/errors.h"

namespace spicl {

namespace {

std::string Num(double v, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string Opt(const std::optional<double>& v, const char* fmt = "%.4f") {
  return v ? Num(*v, fmt) : "--";
}

std::string Mark(bool pass) { return pass ? "PASS" : "FAIL"; }

void AppendConditions(std::string* out, const std::vector<GainCondition>& cs) {
  for (const GainCondition& c : cs) {
    *out += "  " + Mark(c.pass) + "  " + c.name + ": " + Num(c.lhs) + " vs " +
            Num(c.rhs) + "\n";
  }
}

}  // namespace

std::string FormatSeries(const std::vector<double>& times,
                         const std::vector<double>& values) {
  std::string out;
  out.reserve(times.size() * 32);
  for (std::size_t i = 0; i < times.size() && i < values.size(); ++i) {
    out += Num(times[i], "%.6f") + " " + Num(values[i], "%.10e") + "\n";
  }
  return out;
}

std::string FormatSweepTable(const SweepReport& report) {
  std::string out =
      "lambda\tstatus\tnonzeros\trms_e\ttheta_err_tf\tTP\tFP\tFN\tTN\t"
      "precision\trecall\tf1\tlambda_min_final\ttarget_time\tmax_theta_norm\t"
      "chatter_p2p\tz_limsup\tultimate_bound\tgains_pass\terror\n";
  for (const SweepRow& r : report.rows) {
    out += Num(r.lambda, "%g") + "\t" + (r.ok ? "ok" : "failed") + "\t" +
           std::to_string(r.nonzeros) + "\t" + Num(r.rms_e, "%.6f") + "\t" +
           Num(r.theta_err_final, "%.6f") + "\t" + std::to_string(r.counts.tp) +
           "\t" + std::to_string(r.counts.fp) + "\t" +
           std::to_string(r.counts.fn) + "\t" + std::to_string(r.counts.tn) +
           "\t" + Opt(r.metrics.precision, "%.2f") + "\t" +
           Opt(r.metrics.recall, "%.2f") + "\t" + Num(r.metrics.f1, "%.2f") +
           "\t" + Num(r.lambda_min_final, "%.6g") + "\t" +
           Opt(r.target_time, "%.3f") + "\t" + Num(r.max_theta_norm, "%.6f") +
           "\t" + Num(r.chatter_p2p, "%.3e") + "\t" + Num(r.z_limsup, "%.6f") +
           "\t" + Num(r.ultimate_bound, "%.6f") + "\t" +
           (r.gains_pass ? "true" : "false") + "\t" +
           (r.error.empty() ? "-" : r.error) + "\n";
  }
  return out;
}

std::string FormatConfusionBlocks(const SweepReport& report) {
  std::string out;
  for (const SweepRow& r : report.rows) {
    out += "lambda = " + Num(r.lambda, "%g") + (r.ok ? "" : "  (failed)") + "\n";
    out += "  TP = " + std::to_string(r.counts.tp) +
           "  FN = " + std::to_string(r.counts.fn) + "\n";
    out += "  FP = " + std::to_string(r.counts.fp) +
           "  TN = " + std::to_string(r.counts.tn) + "\n";
    out += "  predicted positive = " + std::to_string(r.counts.tp + r.counts.fp) +
           "  predicted negative = " + std::to_string(r.counts.fn + r.counts.tn) +
           "\n";
    out += "  precision = " + Opt(r.metrics.precision, "%.2f") +
           "  recall = " + Opt(r.metrics.recall, "%.2f") +
           "  F1 = " + Num(r.metrics.f1, "%.2f") + "\n\n";
  }
  return out;
}

std::string FormatGainReport(const GainReport& g) {
  std::string out;
  out += "k = " + Num(g.k) + "\n";
  out += "alpha = " + Num(g.alpha) + "\n";
  out += "iota = " + Num(g.iota) + "\n";
  out += "m_lo = " + Num(g.m_lo) + "\n";
  out += "m_hi = " + Num(g.m_hi) + "\n";
  out += "Y_bar = " + Num(g.y_bound) + "\n";
  out += "xd_bar = " + Num(g.xd_bound) + "\n";
  out += "d_bar = " + Num(g.d_bar) + "\n";
  out += "r_e = " + Num(g.r_e) + "\n";
  out += "r = " + Num(g.r) + "\n";
  out += "ultimate_bound = " + Num(g.ultimate_bound) + "\n";
  out += "tracking conditions:\n";
  AppendConditions(&out, g.tracking);
  out += "composite conditions, ratio m_lo/m_hi:\n";
  AppendConditions(&out, g.composite_printed);
  out += "composite conditions, ratio m_hi/m_lo:\n";
  AppendConditions(&out, g.composite_proof);
  out += "overall (m_lo/m_hi) = " + Mark(g.passes_printed()) + "\n";
  out += "overall (m_hi/m_lo) = " + Mark(g.passes_proof()) + "\n";
  return out;
}

std::string FormatRunSummary(const RunResult& run, const SweepRow& row,
                             const SimConfig& config) {
  std::string out;
  out += "lambda = " + Num(run.lambda, "%g") + "\n";
  out += "shrink_scaling = " + ToString(config.shrink) + "\n";
  out += "nonzeros = " + std::to_string(row.nonzeros) + "\n";
  out += "rms_e = " + Num(run.rms_e, "%.6f") + "\n";
  out += "theta_err_tf = " + Num(run.theta_err_final, "%.6f") + "\n";
  out += "TP = " + std::to_string(row.counts.tp) + "\n";
  out += "FP = " + std::to_string(row.counts.fp) + "\n";
  out += "FN = " + std::to_string(row.counts.fn) + "\n";
  out += "TN = " + std::to_string(row.counts.tn) + "\n";
  out += "precision = " + Opt(row.metrics.precision, "%.2f") + "\n";
  out += "recall = " + Opt(row.metrics.recall, "%.2f") + "\n";
  out += "f1 = " + Num(row.metrics.f1, "%.2f") + "\n";
  out += "lambda_min_final = " + Num(run.lambda_min_final, "%.6g") + "\n";
  out += "lambda_min_target = " + Num(config.target, "%g") + "\n";
  out += std::string("lambda_min_target_met = ") +
         (run.target_time ? "true" : "false") + "\n";
  out += "target_time = " + Opt(run.target_time, "%.3f") + "\n";
  out += "max_theta_norm = " + Num(run.max_theta_norm, "%.6f") + "\n";
  out += "chatter_p2p = " + Num(run.chatter_p2p, "%.3e") + "\n";
  out += "z_limsup = " + Num(run.z_limsup, "%.6f") + "\n";
  out += "ultimate_bound = " + Num(run.gains.ultimate_bound, "%.6f") + "\n";
  out += "max_filter_residual = " + Num(run.max_filter_residual, "%.3e") + "\n";
  out += "stack_offered = " + std::to_string(run.offered) + "\n";
  out += "stack_accepted = " + std::to_string(run.accepted) + "\n";
  out += "theta_hat_tf =";
  for (Eigen::Index i = 0; i < run.theta_hat_final.size(); ++i) {
    out += " " + Num(run.theta_hat_final(i), "%.6f");
  }
  out += "\n";
  return out;
}

std::string FormatStackEvents(const std::vector<StackEvent>& events) {
  std::string out = "# t replaced_index lambda_min\n";
  for (const StackEvent& e : events) {
    out += Num(e.t, "%.6f") + " " + std::to_string(e.replaced_index) + " " +
           Num(e.lambda_min, "%.10e") + "\n";
  }
  return out;
}

std::string LambdaDirName(double lambda) {
  std::string s = Num(lambda, "%g");
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return "lambda_" + s;
}

void WriteTextFile(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

void WriteRunFiles(const std::string& dir, const RunResult& run,
                   const SweepRow& row, const SimConfig& config) {
  const std::filesystem::path d(dir);
  WriteTextFile((d / "tracking_error_norm.dat").string(),
                FormatSeries(run.times, run.e_norm));
  WriteTextFile((d / "parameter_estimation_error_norm.dat").string(),
                FormatSeries(run.times, run.theta_err_norm));
  WriteTextFile((d / "summary.txt").string(), FormatRunSummary(run, row, config));
  WriteTextFile((d / "gain_report.txt").string(), FormatGainReport(run.gains));
  if (!run.stack_events.empty()) {
    WriteTextFile((d / "stack_events.dat").string(),
                  FormatStackEvents(run.stack_events));
  }
}

}  // namespace spicl
