// Copyright 2026 The SBQS Authors
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

// sbqs: run, bound and inspect imaginary-time experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure
// (including extinct rows).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sbqs/errors.hpp"
#include "sbqs/experiment.hpp"
#include "sbqs/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides {
    std::string config_path;
    std::string out_dir;
    bool svg = false;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> parallel;
};

void add_common(CLI::App *cmd, Overrides &o, bool outputs) {
    cmd->add_option("config", o.config_path, "experiment config (JSON)")->required();
    cmd->add_option("--out", o.out_dir, "output directory (default: config out_dir, else stdout)");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--parallel", o.parallel, "worker threads")->check(CLI::Range(1u, 256u));
    if (outputs) {
        cmd->add_flag("--svg", o.svg, "also write fidelity.svg");
    }
}

sbqs::ExperimentConfig resolve(const Overrides &o) {
    auto config = sbqs::load_config(o.config_path);
    if (!o.out_dir.empty()) {
        config.out_dir = o.out_dir;
    }
    config.svg = config.svg || o.svg;
    if (o.seed) {
        config.seed = *o.seed;
    }
    if (o.parallel) {
        config.parallel = *o.parallel;
    }
    return config;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw sbqs::Error("cannot write " + path.string());
    }
}

int run_command(sbqs::ExperimentConfig config) {
    const auto result = sbqs::run_experiment(config);
    for (const auto &w : result.warnings) {
        std::cerr << "warning: " << w << '\n';
    }
    if (config.out_dir.empty()) {
        std::cout << sbqs::format_csv(result.rows);
    } else {
        const std::filesystem::path dir(config.out_dir);
        std::filesystem::create_directories(dir);
        sbqs::emit_csv(result.rows, dir / "results.csv");
        write_text(dir / "bounds.json", sbqs::bounds_to_json(result.bounds));
        write_text(dir / "config.json", sbqs::config_to_json(config));
        if (config.svg) {
            sbqs::emit_svg(result.rows, dir / "fidelity.svg");
        }
        std::cerr << "wrote " << (dir / "results.csv").string() << '\n';
    }
    if (!result.all_ok()) {
        for (const auto &r : result.rows) {
            if (!r.status.empty()) {
                std::cerr << "beta " << r.beta << ": " << r.status << '\n';
            }
        }
        return kExitNumeric;
    }
    return 0;
}

int bounds_command(const sbqs::ExperimentConfig &config) {
    const auto text = sbqs::bounds_to_json(sbqs::bounds_sweep(config));
    if (config.out_dir.empty()) {
        std::cout << text;
    } else {
        std::filesystem::create_directories(config.out_dir);
        write_text(std::filesystem::path(config.out_dir) / "bounds.json", text);
    }
    return 0;
}

int decompose_command(const sbqs::ExperimentConfig &config) {
    const auto setup = sbqs::prepare_experiment(config);
    const auto &d = setup.decomposition;
    std::printf("decomposition: %s\n", std::string(sbqs::to_string(d.provenance)).c_str());
    std::printf("qubits: %d\n", d.n);
    std::printf("terms (l): %zu\n", d.terms.size());
    std::printf("identity offset: %.12g\n", d.identity_offset);
    if (config.shift_to_positive) {
        std::printf("positive shift: %.12g\n", setup.shift);
    }
    std::printf("max |h_i|: %.12g\n", d.max_abs_weight());
    for (const auto &t : d.terms) {
        std::string support;
        for (int s : t.support) {
            support += (support.empty() ? "" : ",") + std::to_string(s);
        }
        std::printf("  %+.12g  %-12s sites {%s}\n", t.weight, t.label.c_str(), support.c_str());
    }
    std::printf("reconstruction residual (Frobenius): %.3e\n", setup.reconstruction_residual);
    return setup.reconstruction_residual <= 1e-9 ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"State-based quantum simulation of imaginary-time evolution"};
    app.require_subcommand(1);
    Overrides o;
    auto *run = app.add_subcommand("run", "sweep beta and write the result table");
    add_common(run, o, true);
    auto *bounds = app.add_subcommand("bounds", "evaluate the analytic bounds at every beta");
    add_common(bounds, o, false);
    auto *decompose = app.add_subcommand("decompose", "print the resource decomposition");
    add_common(decompose, o, false);
    auto *sample = app.add_subcommand("sample", "like run, with Monte Carlo post-selection");
    add_common(sample, o, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        auto config = resolve(o);
        if (*run) {
            return run_command(config);
        }
        if (*sample) {
            config.mode = sbqs::Mode::sampled;
            return run_command(config);
        }
        if (*bounds) {
            return bounds_command(config);
        }
        return decompose_command(config);
    } catch (const sbqs::ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
