/*
 * Copyright 2026 The gnfp Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gnfp/dp_solver.hpp"

namespace gnfp::cli {

enum class Command { CheckAxioms, SolveFixedPoint, SuzukiCheck, SolveDp };

std::string_view command_name(Command c);

struct MetricSpec {
    std::string construction = "k2_max";  // rho_max | k1_sum | k2_max | sup
    std::string base = "abs";             // abs | euclidean
    std::size_t dim = 1;                  // 2 or 3 for euclidean
    std::size_t n = 3;
    std::size_t grid_size = 4;            // sup carrier only
};

struct MappingSpec {
    std::string family;           // affine | cosine | scaled_rotation
    double a = 1.0;               // affine slope / cosine amplitude
    std::vector<double> b;        // offset; one entry per coordinate
    double scale = 1.0;           // scaled_rotation
    double angle = 0.0;           // scaled_rotation, radians
};

struct RunConfig {
    Command command = Command::CheckAxioms;
    MetricSpec metric;
    std::optional<MappingSpec> mapping;
    std::optional<DpProblem> problem;
    std::vector<double> y0;                   // start point coordinates
    std::optional<std::vector<double>> second_start;
    double tol = 1e-12;
    double suzuki_tol = 1e-12;
    double r = 0.5;
    std::size_t trials = 10000;
    std::size_t max_iter = 1000;
    std::size_t lipschitz_samples = 1000;
    std::uint64_t seed = 0;
    double sample_lo = -10.0;
    double sample_hi = 10.0;
    std::filesystem::path out_dir = ".";
};

/// Itemised configuration problems, each prefixed with its field path.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

/// Parses a JSON config. Relative problem_file paths resolve against base_dir.
/// Throws ConfigError for schema problems and IntegrityError for inconsistent
/// problem tables.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".");

RunConfig load_config(const std::filesystem::path& path);

struct RunSummary {
    std::string command;
    std::string text;
    bool success = false;
    double wall_seconds = 0.0;
    std::vector<std::filesystem::path> outputs;

    int exit_code() const { return success ? 0 : 1; }
};

/// Executes the command and writes its outputs into config.out_dir.
RunSummary run(const RunConfig& config);

}  // namespace gnfp::cli
