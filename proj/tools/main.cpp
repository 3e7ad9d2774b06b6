// Copyright 2026 The spikelab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <CLI11.hpp>

#include <exception>
#include <functional>
#include <iostream>

namespace {

using namespace spikelab::app;

void add_common(CLI::App *cmd, CommonOptions &opt) {
    cmd->add_option("--config", opt.config, "Config or manifest file (key = value)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Master seed; overrides the config");
    cmd->add_option("--traces", opt.traces, "Traces per measurement");
    cmd->add_option("--workers", opt.workers,
                    "Worker threads, 0 = all cores; never changes outputs")
        ->capture_default_str();
}

void add_sike(CLI::App *cmd, SikeOptions &opt) {
    add_common(cmd, opt);
    cmd->add_option("--key-bits", opt.key_bits, "Key length L (>= 2)");
    cmd->add_option("--key", opt.key, "Hex key or \"random\"")->capture_default_str();
    cmd->add_option("--sep-limit", opt.sep_limit,
                    "\"auto\" or a value in volts")
        ->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sleep-induced power spike side-channel simulator"};
    app.require_subcommand(1);

    std::function<int()> action;

    SweepOptions sweep;
    auto *c_sweep = app.add_subcommand("model-sweep", "Run one microbenchmark sweep");
    add_common(c_sweep, sweep);
    c_sweep->add_option("--experiment", sweep.experiment, "fig7, fig9, fig11 or fig13")
        ->required()
        ->check(CLI::IsMember({"fig7", "fig9", "fig11", "fig13"}));
    c_sweep->callback([&] { action = [&] { return model_sweep(sweep, std::cout); }; });

    SikeOptions poc;
    auto *c_poc = app.add_subcommand("sike-poc", "SIKE threshold attack on the register spike");
    add_sike(c_poc, poc);
    c_poc->callback([&] { action = [&] { return sike_poc(poc, std::cout); }; });

    SikeOptions sike;
    auto *c_sike = app.add_subcommand("sike-attack", "SIKE bit-by-bit residual attack");
    add_sike(c_sike, sike);
    c_sike->add_option("--iterations", sike.iterations,
                       "Decapsulations per trace before the switch");
    c_sike->callback([&] { action = [&] { return sike_attack(sike, std::cout); }; });

    AesOptions aes;
    auto *c_aes = app.add_subcommand("aes-attack", "AES-128 final-round key recovery");
    add_common(c_aes, aes);
    c_aes->add_option("--key", aes.key, "32 hex digits or \"random\"")->capture_default_str();
    c_aes->add_option("--targets", aes.targets, "Comma-separated bytes 0..15 or \"all\"")
        ->capture_default_str();
    c_aes->add_option("--enc-per-trace", aes.enc_per_trace, "Encryptions per trace");
    c_aes->add_option("--noise-sweep", aes.noise_sweep,
                      "Comma-separated noise multipliers for noise_sweep.csv");
    c_aes->callback([&] { action = [&] { return aes_attack(aes, std::cout); }; });

    WorkloadOptions wl;
    auto *c_wl = app.add_subcommand("workload-id", "Nearest-centroid workload identification");
    add_common(c_wl, wl);
    c_wl->add_option("--classes", wl.classes, "Number of workload classes (2..6)")
        ->capture_default_str();
    c_wl->add_option("--trials", wl.trials, "Classified observations")->capture_default_str();
    c_wl->add_option("--obs-traces", wl.observation_traces, "Traces per observation")
        ->capture_default_str();
    c_wl->callback([&] { action = [&] { return workload_id(wl, std::cout); }; });

    IngestOptions ing;
    auto *c_ing = app.add_subcommand("ingest", "Extract the peak of an oscilloscope CSV");
    c_ing->add_option("--in", ing.in, "Oscilloscope CSV export")->required();
    c_ing->add_option("--out", ing.out, "Output directory")->capture_default_str();
    c_ing->add_option("--smooth", ing.smooth, "Moving-average window")->capture_default_str();
    c_ing->add_option("--label", ing.label, "Row label, default the file stem");
    c_ing->callback([&] { action = [&] { return ingest(ing, std::cout); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kError;
    }

    try {
        return action();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
}
