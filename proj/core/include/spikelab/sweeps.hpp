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

// The four microbenchmark sweeps: register HWT, processed-data HWT,
// processed-data HD and executed-instruction count.

#include "spikelab/acquisition.hpp"
#include "spikelab/spike_synth.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace spikelab {

enum class Experiment { Fig7, Fig9, Fig11, Fig13 };

/// "fig7", "fig9", "fig11" or "fig13". Throws DomainError otherwise.
Experiment parse_experiment(std::string_view name);
std::string_view name_of(Experiment e) noexcept;

struct SweepConfig {
    std::uint64_t loop_itr = 100;
    std::array<unsigned, 5> hwt_grid = {0, 16, 32, 48, 64};
    std::array<unsigned, 5> shift_grid = {2, 5, 10, 15, 20};
    std::array<std::uint64_t, 5> iteration_grid = {50, 100, 200, 400, 800};
};

struct SweepPoint {
    double x = 0.0;
    std::string label;
    Summary stats;
};

/// One point per (series, x), traces_per_point spikes each. Point i draws
/// from derive_seed(seed, {experiment, i}).
std::vector<SweepPoint> run_sweep(Experiment experiment, const AttackEnv &env,
                                  std::size_t traces_per_point,
                                  std::uint64_t seed,
                                  const SweepConfig &config = {});

} // namespace spikelab
