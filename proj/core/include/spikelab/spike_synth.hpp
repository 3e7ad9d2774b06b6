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

// Turns a victim run into the sleep-induced spike: an affine combination
// of the register Hamming weight at the context switch (context-switch
// signature) and the chip temperature rise left by earlier work (residual
// signature), plus Gaussian measurement noise.

#include "spikelab/microbench.hpp"
#include "spikelab/power_model.hpp"
#include "spikelab/rng.hpp"
#include "spikelab/trace.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace spikelab {

struct SpikeParams {
    double beta0 = 0.1;        ///< V
    double beta_ctx = 1e-5;    ///< V per register one-bit
    double beta_res = 60.0;    ///< V per kelvin above ambient
    double sigma_noise = 0.5 * kRegisterCount * 64 * 1e-5; ///< V

    /// Half of the full context-switch range beta_ctx * 27 * 64.
    static double default_sigma(double beta_ctx) noexcept {
        return 0.5 * static_cast<double>(kRegisterCount) * 64.0 * beta_ctx;
    }

    void validate() const;

    friend bool operator==(const SpikeParams &, const SpikeParams &) = default;
};

/// Everything a measurement needs besides the victim itself.
struct AttackEnv {
    CmosParams cmos;
    ThermalParams thermal;
    SpikeParams spike;
    double dt = 1e-3;               ///< s per activity sample
    std::uint64_t master_seed = 1;
    std::size_t n_traces = 200;     ///< traces per measurement
    unsigned workers = 1;           ///< 0 = one per hardware thread

    void validate() const;
};

/// beta0 + beta_ctx * HWT(snapshot) + beta_res * (T - T_amb) + noise.
/// Throws DomainError if th.t < tp.t_amb.
double spike_amplitude(const RegisterSnapshot &snap, ThermalState th,
                       const ThermalParams &tp, const SpikeParams &sp,
                       Rng &rng);

struct TraceShape {
    double volts_per_watt = 1.0; ///< body level per watt
    std::size_t floor_samples = 20;
};

/// Synthetic oscilloscope trace relative to a 0 V floor: every power step
/// becomes samples_per_step samples at volts_per_watt * P (plus noise),
/// then one spike sample of height spike_v, then floor_samples zeros.
Trace synthesize_trace(std::span<const double> pre_power, double spike_v,
                       double dt, std::size_t samples_per_step,
                       const SpikeParams &sp, Rng &rng,
                       const TraceShape &shape = {});

/// A victim execution. `run` may draw from the stream it is handed;
/// deterministic victims ignore it, which lets run_experiment reuse one
/// thermal simulation across repetitions.
struct Victim {
    std::function<VictimOutput(Rng &)> run;
    bool deterministic = false;
};

Victim microbench_victim(const MicrobenchSpec &spec);

/// Independent seeds for the victim's internal randomness and for the
/// measurement noise. Repetition i draws from derive_seed(seed, {i}).
struct StreamSeeds {
    std::uint64_t victim = 0;
    std::uint64_t noise = 0;

    static StreamSeeds from_master(std::uint64_t master) noexcept;
};

/// n_traces repetitions of victim -> simulate_thermal -> spike_amplitude.
/// Output depends only on the seeds, never on env.workers.
std::vector<PeakSample> run_experiment(const Victim &victim,
                                       std::size_t n_traces,
                                       StreamSeeds seeds, const AttackEnv &env,
                                       std::string_view label = {});

inline std::vector<PeakSample> run_experiment(const Victim &victim,
                                              std::size_t n_traces,
                                              std::uint64_t master_seed,
                                              const AttackEnv &env,
                                              std::string_view label = {}) {
    return run_experiment(victim, n_traces, StreamSeeds::from_master(master_seed),
                          env, label);
}

} // namespace spikelab
