// Copyright 2026 The qcommit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Experiment configs, the dispatcher and report serialization.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcommit/errors.hpp"

namespace qcommit {

inline constexpr const char *kToolVersion = "0.1.0";

/// Bad experiment name, unknown key or malformed value.
class UsageError : public Error {
  public:
    using Error::Error;
};

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, ParamValue> params;
    std::uint64_t seed = 0;
    std::string output;
    std::string format = "json";
    std::string function_file;
    bool wall_time = false;
};

struct ReportTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::map<std::string, double> metrics;
    std::optional<double> bound;
    std::optional<bool> pass;
    std::optional<ReportTable> table;
    std::optional<double> wall_time;
    std::string tool_version = kToolVersion;
};

const std::vector<std::string> &experiment_names();
/// Keys accepted by `experiment` with their defaults.
const std::map<std::string, ParamValue> &experiment_defaults(const std::string &experiment);

/// Fills defaults and coerces values to the default's type. Unknown keys,
/// unknown experiments and bad formats raise UsageError.
ExperimentConfig resolve(ExperimentConfig config);

/// Deterministic given the resolved config.
ExperimentReport run(const ExperimentConfig &config);

/// JSON: one object, sorted keys, 17 significant digits. CSV: the table if
/// present, else one "metric,value" row per metric.
std::string emit_report(const ExperimentReport &report, const std::string &format);
ExperimentReport parse_report(const std::string &json);

/// JSON config file: experiment, seed, format, out, function_file, params.
ExperimentConfig load_config(const std::string &path);

} // namespace qcommit
