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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli_app.hpp"
#include "gnfp/error.hpp"

// Exit status: 0 pass, 1 violations or non-convergence, 2 bad configuration, 3 runtime failure.

int main(int argc, char** argv) {
    CLI::App app{"Generalized n-metric fixed-point toolkit"};
    app.set_version_flag("--version", "gnfp 0.1.0");

    std::string command;
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double tol = 0.0;
    std::string out_dir;

    app.add_option("command", command,
                   "Optional; must match the config's command (check-axioms, solve-fixed-point, suzuki-check, solve-dp)");
    app.add_option("--config", config_path, "JSON run configuration")->required()->envname("GNFP_CONFIG");
    auto* seed_opt = app.add_option("--seed", seed, "Override the sampling seed")->envname("GNFP_SEED");
    auto* trials_opt =
        app.add_option("--trials", trials, "Override the number of sampled trials")->check(CLI::PositiveNumber)->envname("GNFP_TRIALS");
    auto* tol_opt = app.add_option("--tol", tol, "Override the tolerance")->check(CLI::PositiveNumber)->envname("GNFP_TOL");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory")->envname("GNFP_OUT");

    CLI11_PARSE(app, argc, argv);

    try {
        auto config = gnfp::cli::load_config(config_path);
        if (!command.empty() && command != gnfp::cli::command_name(config.command)) {
            std::cerr << "error: command '" << command << "' does not match config command '"
                      << gnfp::cli::command_name(config.command) << "'\n";
            return 2;
        }
        if (*seed_opt) config.seed = seed;
        if (*trials_opt) config.trials = trials;
        if (*tol_opt) config.tol = tol;
        if (*out_opt) config.out_dir = out_dir;

        const auto summary = gnfp::cli::run(config);
        std::cout << summary.text;
        for (const auto& path : summary.outputs) std::cout << "wrote " << path.string() << '\n';
        std::cout << "wall_time_s=" << summary.wall_seconds << '\n';
        return summary.exit_code();
    } catch (const gnfp::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gnfp::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return 2;
    } catch (const gnfp::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
