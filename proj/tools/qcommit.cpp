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
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "qcommit/experiments.hpp"

namespace {

constexpr int kExitBound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

const char *kDescription =
    "Runs one experiment and prints its report.\n\n"
    "Precedence: flags override the config file, which overrides defaults.\n"
    "QCOMMIT_SEED, when set, overrides the seed from every other source.\n"
    "Monte Carlo trial i draws from its own stream seeded with\n"
    "a splitmix64 mix of (seed, i), so results do not depend on thread count.\n\n"
    "Exit codes: 0 success, 1 bound violated, 2 usage error, 3 capacity error.";

std::uint64_t parse_seed(const std::string &text) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) {
        throw qcommit::UsageError("invalid seed '" + text + "'");
    }
    return v;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{kDescription, "qcommit"};
    std::string experiment;
    std::string config_path;
    std::string seed_text;
    std::string out;
    std::string format;
    std::string function_file;
    bool wall_time = false;
    bool list = false;

    std::string names;
    for (const auto &n : qcommit::experiment_names()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    app.add_option("--experiment", experiment, "One of: " + names);
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_text, "64-bit master seed");
    app.add_option("--out", out, "Also write the report to this path");
    app.add_option("--format", format, "json or csv");
    app.add_option("--function-file", function_file, "Table of H: header \"n m\", then N values");
    app.add_flag("--wall-time", wall_time, "Include elapsed wall time in the report");
    app.add_flag("--list", list, "List experiments with their parameters and defaults");

    std::map<std::string, std::string> flag_params;
    std::map<std::string, CLI::Option *> param_options;
    for (const char *key : {"n", "m", "folds", "t", "P", "S", "N", "M", "trials", "n-copies",
                            "probe-count", "k", "mode", "d", "T", "T_samp", "T_verify"}) {
        param_options[key] =
            app.add_option(std::string("--") + key, flag_params[key], "Experiment parameter")
                ->group("Parameters");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (list) {
        for (const auto &n : qcommit::experiment_names()) {
            std::cout << n;
            for (const auto &[k, v] : qcommit::experiment_defaults(n)) {
                std::cout << ' ' << k << '=';
                std::visit([](const auto &x) { std::cout << x; }, v);
            }
            std::cout << '\n';
        }
        return 0;
    }

    qcommit::ExperimentReport report;
    try {
        qcommit::ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = qcommit::load_config(config_path);
        }
        if (!experiment.empty()) {
            cfg.experiment = experiment;
        }
        if (cfg.experiment.empty()) {
            throw qcommit::UsageError("--experiment is required");
        }
        if (!seed_text.empty()) {
            cfg.seed = parse_seed(seed_text);
        }
        if (const char *env = std::getenv("QCOMMIT_SEED"); env != nullptr && *env != '\0') {
            cfg.seed = parse_seed(env);
        }
        if (!out.empty()) {
            cfg.output = out;
        }
        if (!format.empty()) {
            cfg.format = format;
        }
        if (!function_file.empty()) {
            cfg.function_file = function_file;
        }
        cfg.wall_time = wall_time;
        for (const auto &[key, option] : param_options) {
            if (option->count() > 0) {
                cfg.params[key] = flag_params[key];
            }
        }
        report = qcommit::run(cfg);
    } catch (const qcommit::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const qcommit::UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qcommit::ValueError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const qcommit::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBound;
    }

    const std::string bytes = qcommit::emit_report(report, report.config.format);
    if (!report.config.output.empty()) {
        std::ofstream file(report.config.output, std::ios::binary);
        file << bytes;
        if (!file) {
            std::cerr << "cannot write '" << report.config.output << "'\n";
            return kExitUsage;
        }
    }
    std::cout << bytes;
    return report.pass.value_or(true) ? 0 : kExitBound;
}
