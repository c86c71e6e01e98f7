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

#include "spicl/config.h"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "spicl/errors.h"

namespace spicl {

namespace {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double ParseDouble(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

int ParseInt(const std::string& s) {
  const double v = ParseDouble(s);
  if (v != static_cast<double>(static_cast<int>(v))) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return static_cast<int>(v);
}

Vector ParseVector(const std::string& s) {
  const std::vector<std::string> parts = Split(s, ',');
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = ParseDouble(parts[i]);
  }
  return v;
}

Matrix ParseMatrix(const std::string& s) {
  const std::vector<std::string> rows = Split(s, ';');
  Matrix m;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Vector row = ParseVector(rows[r]);
    if (r == 0) {
      m.resize(static_cast<Eigen::Index>(rows.size()), row.size());
    } else if (row.size() != m.cols()) {
      throw std::invalid_argument("ragged matrix rows");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

// Diagonal gain: a vector of entries, or a matrix that must be diagonal.
Vector ParseDiagonal(const std::string& s) {
  if (s.find(';') == std::string::npos) return ParseVector(s);
  const Matrix m = ParseMatrix(s);
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  Matrix off = m;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() != 0.0) {
    throw std::invalid_argument("matrix is not diagonal");
  }
  return m.diagonal();
}

std::string FormatDouble(double v) {
  // Shortest text that parses back to the same double.
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatVector(const Vector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatDouble(v(i));
  }
  return out;
}

std::string FormatMatrix(const Matrix& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r > 0) out += "; ";
    out += FormatVector(m.row(r).transpose());
  }
  return out;
}

struct KeySpec {
  std::string section;
  std::string key;
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename T>
KeySpec Scalar(std::string section, std::string key, T SimConfig::*field) {
  KeySpec spec{std::move(section), std::move(key), nullptr, nullptr};
  spec.set = [field](SimConfig& c, const std::string& v) {
    if constexpr (std::is_same_v<T, int>) {
      c.*field = ParseInt(v);
    } else {
      c.*field = ParseDouble(v);
    }
  };
  spec.get = [field](const SimConfig& c) {
    if constexpr (std::is_same_v<T, int>) {
      return std::to_string(c.*field);
    } else {
      return FormatDouble(c.*field);
    }
  };
  return spec;
}

KeySpec VectorKey(std::string section, std::string key,
                  Vector SimConfig::*field) {
  return {std::move(section), std::move(key),
          [field](SimConfig& c, const std::string& v) { c.*field = ParseVector(v); },
          [field](const SimConfig& c) { return FormatVector(c.*field); }};
}

const std::vector<KeySpec>& Registry() {
  static const std::vector<KeySpec> specs = [] {
    std::vector<KeySpec> s;
    s.push_back(VectorKey("plant", "x0", &SimConfig::x0));
    s.push_back(VectorKey("plant", "theta_true", &SimConfig::theta_true));
    s.push_back({"controller", "K",
                 [](SimConfig& c, const std::string& v) { c.k = ParseMatrix(v); },
                 [](const SimConfig& c) { return FormatMatrix(c.k); }});
    s.push_back(Scalar("controller", "r_e", &SimConfig::r_e));
    s.push_back(Scalar("controller", "r", &SimConfig::r));
    s.push_back(VectorKey("estimator", "theta_hat0", &SimConfig::theta_hat0));
    s.push_back({"estimator", "Gamma",
                 [](SimConfig& c, const std::string& v) {
                   c.gamma_diag = ParseDiagonal(v);
                 },
                 [](const SimConfig& c) { return FormatVector(c.gamma_diag); }});
    s.push_back(Scalar("estimator", "gamma", &SimConfig::icl_gain));
    s.push_back(Scalar("estimator", "lambda", &SimConfig::lambda));
    s.push_back(Scalar("estimator", "r_theta", &SimConfig::radius));
    s.push_back(Scalar("estimator", "epsilon", &SimConfig::boundary));
    s.push_back({"estimator", "shrink_scaling",
                 [](SimConfig& c, const std::string& v) {
                   c.shrink = ParseShrinkScaling(v);
                 },
                 [](const SimConfig& c) { return ToString(c.shrink); }});
    s.push_back(Scalar("stack", "N", &SimConfig::stack_size));
    s.push_back(Scalar("stack", "ybar", &SimConfig::target));
    s.push_back(Scalar("stack", "kappa", &SimConfig::kappa));
    s.push_back(Scalar("stack", "delta", &SimConfig::improvement));
    s.push_back(Scalar("stack", "offer_interval", &SimConfig::offer_interval));
    s.push_back(Scalar("simulation", "T", &SimConfig::window));
    s.push_back(Scalar("simulation", "h", &SimConfig::step));
    s.push_back(Scalar("simulation", "t_final", &SimConfig::t_final));
    s.push_back(Scalar("simulation", "decimate", &SimConfig::decimate));
    s.push_back(Scalar("metrics", "threshold", &SimConfig::threshold));
    s.push_back(Scalar("metrics", "rms_start", &SimConfig::rms_start));
    s.push_back(Scalar("metrics", "rms_end", &SimConfig::rms_end));
    s.push_back(Scalar("metrics", "chatter_start", &SimConfig::chatter_start));
    s.push_back(Scalar("metrics", "bound_start", &SimConfig::bound_start));
    return s;
  }();
  return specs;
}

const KeySpec* Find(const std::string& section, const std::string& key) {
  for (const KeySpec& s : Registry()) {
    if (s.section == section && s.key == key) return &s;
  }
  return nullptr;
}

void Assign(SimConfig* config, const std::string& section,
            const std::string& key, const std::string& value, int line) {
  const std::string name = "[" + section + "]." + key;
  const KeySpec* spec = Find(section, key);
  const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
  if (spec == nullptr) {
    throw ConfigError(where + "unknown key " + name, name, line);
  }
  try {
    spec->set(*config, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + "bad value for " + name + ": " + e.what(), name,
                      line);
  }
}

bool IsKnownSection(const std::string& s) {
  for (const KeySpec& k : Registry()) {
    if (k.section == s) return true;
  }
  return false;
}

}  // namespace

SimConfig ParseConfig(std::string_view text) {
  return ParseConfig(text, SimConfig::Demo());
}

SimConfig ParseConfig(std::string_view text, SimConfig base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = Trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ConfigError("line " + std::to_string(line) +
                              ": malformed section header",
                          body, line);
      }
      section = Trim(std::string_view(body).substr(1, body.size() - 2));
      if (!IsKnownSection(section)) {
        throw ConfigError("line " + std::to_string(line) + ": unknown section [" +
                              section + "]",
                          "[" + section + "]", line);
      }
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected key = value",
                        body, line);
    }
    const std::string key = Trim(std::string_view(body).substr(0, eq));
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line) + ": key " + key +
                            " appears before any section",
                        key, line);
    }
    Assign(&base, section, key, Trim(std::string_view(body).substr(eq + 1)),
           line);
  }
  return base;
}

SimConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

void ApplyOverride(SimConfig* config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const std::string lhs = Trim(assignment.substr(0, eq));
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) +
                          "' is not of the form section.key=value",
                      lhs);
  }
  const auto dot = lhs.find('.');
  if (dot == std::string::npos) {
    throw ConfigError("override key '" + lhs + "' lacks a section prefix", lhs);
  }
  const std::string section = lhs.substr(0, dot);
  const std::string key = lhs.substr(dot + 1);
  if (!IsKnownSection(section)) {
    throw ConfigError("unknown key " + lhs + " (no section [" + section + "])",
                      lhs);
  }
  Assign(config, section, key, Trim(assignment.substr(eq + 1)), 0);
}

std::string SerializeConfig(const SimConfig& config) {
  std::string out;
  std::string section;
  for (const KeySpec& s : Registry()) {
    if (s.section != section) {
      if (!section.empty()) out += "\n";
      section = s.section;
      out += "[" + section + "]\n";
    }
    out += s.key + " = " + s.get(config) + "\n";
  }
  return out;
}

bool SameConfig(const SimConfig& a, const SimConfig& b) {
  for (const KeySpec& s : Registry()) {
    if (s.get(a) != s.get(b)) return false;
  }
  return true;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const KeySpec& s : Registry()) keys.push_back(s.section + "." + s.key);
  return keys;
}

}  // namespace spicl
