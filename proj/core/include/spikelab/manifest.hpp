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

// Experiment manifest: every parameter that determines an experiment's
// output, stored as flat `key = value` lines.

#include "spikelab/power_model.hpp"
#include "spikelab/spike_synth.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace spikelab {

struct AttackKnobs {
    double dt = 1e-3;
    std::size_t n_traces = 200;
    std::size_t sike_key_bits = 64;
    std::size_t sike_iterations = 4;
    std::size_t enc_per_trace = 2000;

    friend bool operator==(const AttackKnobs &, const AttackKnobs &) = default;
};

struct ExperimentManifest {
    std::uint64_t master_seed = 1;
    std::string created = "unset";
    /// "none", "sike", "aes", "workload" or a microbench descriptor.
    std::string victim = "none";
    CmosParams cmos;
    ThermalParams thermal;
    SpikeParams spike;
    AttackKnobs attack;

    AttackEnv to_env(unsigned workers = 1) const;

    friend bool operator==(const ExperimentManifest &,
                           const ExperimentManifest &) = default;
};

/// Keys in the order they are written.
const std::vector<std::string> &manifest_keys();

void write_manifest(const ExperimentManifest &m, std::ostream &out);
void write_manifest(const ExperimentManifest &m, const std::filesystem::path &path);

/// Every key required, unknown or repeated keys rejected. Blank lines and
/// lines starting with '#' are skipped. Throws ConfigError naming the key.
ExperimentManifest read_manifest(std::istream &in);
ExperimentManifest read_manifest(const std::filesystem::path &path);

/// Like read_manifest, but only master_seed is required; absent keys keep
/// their defaults.
ExperimentManifest read_config(std::istream &in);
ExperimentManifest read_config(const std::filesystem::path &path);

} // namespace spikelab
