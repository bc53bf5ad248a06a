// Copyright 2026 The infoclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INFOCLONE_TOOLS_CLI_HPP
#define INFOCLONE_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "infoclone/transform.hpp"

namespace infoclone::cli {

inline constexpr std::uint64_t kDefaultSeed = 271828182845904523ULL;

enum class ExitCode : int {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
};

enum class OutputFormat { Json, Csv };

struct SweepGrid {
    std::string parameter;  // n_copies | epsilon | sin_rt
    std::vector<double> values;
};

struct ExperimentConfig {
    std::string command;
    StrategyKind strategy = StrategyKind::Optimal;
    long long n_copies = 100;
    std::optional<double> epsilon;
    std::optional<ComplexAmplitude> beta;
    std::optional<double> sin_rt;
    ComplexAmplitude alpha{0.0, 0.0};
    long long n_trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    long long cutoff = 25;
    std::vector<double> couplings{1.0};
    double time = 1.5707963267948966;
    std::string output_path;
    OutputFormat format = OutputFormat::Json;
    std::optional<SweepGrid> sweep;
};

/// Overlays the fields present in a parsed JSON config onto `config`.
/// Unknown keys are rejected with std::invalid_argument.
void apply_config_json(const nlohmann::json &doc, ExperimentConfig &config);

/// JSON serialization with every floating-point value written to 17
/// significant digits. Object keys keep insertion order.
std::string dump_json(const nlohmann::ordered_json &doc);

/// RFC 4180 field quoting.
std::string csv_field(const std::string &text);

/// Renders the report for an already-resolved config. Returns the exit code;
/// validation failures throw infoclone::Error.
ExitCode execute(const ExperimentConfig &config, std::string &report);

/// Full driver: parses `args` (args[0] is the program name), resolves
/// defaults < config file < flags, runs the command and writes the report to
/// the output file or `out`. Diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace infoclone::cli

#endif
