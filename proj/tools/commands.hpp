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

#pragma once

// Subcommand implementations behind the `spikelab` executable. Each
// returns a process exit code and writes its data products under
// options.out; human-readable progress goes to `log`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace spikelab::app {

enum ExitCode : int { kSuccess = 0, kError = 1, kPartial = 2 };

struct CommonOptions {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out = "out";
    std::optional<std::uint64_t> seed;    ///< wins over the config seed
    std::optional<std::size_t> traces;    ///< wins over attack.n_traces
    unsigned workers = 1;                 ///< 0 = all hardware threads
};

struct SweepOptions : CommonOptions {
    std::string experiment;
};

struct SikeOptions : CommonOptions {
    std::optional<std::size_t> key_bits;
    std::string key = "random";
    std::string sep_limit = "auto";
    std::optional<std::size_t> iterations;
};

struct AesOptions : CommonOptions {
    std::string key = "random";
    std::string targets = "all";
    std::optional<std::size_t> enc_per_trace;
    /// Comma-separated noise multipliers; empty skips the sweep.
    std::string noise_sweep;
};

struct WorkloadOptions : CommonOptions {
    std::size_t classes = 6;
    std::size_t trials = 100;
    std::size_t observation_traces = 20;
};

struct IngestOptions {
    std::filesystem::path in;
    std::filesystem::path out = "out";
    std::size_t smooth = 10;
    std::string label; ///< defaults to the input file stem
};

int model_sweep(const SweepOptions &opt, std::ostream &log);
int sike_poc(const SikeOptions &opt, std::ostream &log);
int sike_attack(const SikeOptions &opt, std::ostream &log);
int aes_attack(const AesOptions &opt, std::ostream &log);
int workload_id(const WorkloadOptions &opt, std::ostream &log);
int ingest(const IngestOptions &opt, std::ostream &log);

} // namespace spikelab::app
