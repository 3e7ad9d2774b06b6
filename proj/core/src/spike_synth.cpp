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

#include "spikelab/spike_synth.hpp"

#include "spikelab/errors.hpp"
#include "spikelab/parallel.hpp"

#include <cmath>
#include <string>

namespace spikelab {

void SpikeParams::validate() const {
    auto positive = [](double v, const char *name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(std::string(name) + " must be finite and > 0");
    };
    positive(beta0, "spike.beta0");
    positive(beta_ctx, "spike.beta_ctx");
    positive(beta_res, "spike.beta_res");
    if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise))
        throw ConfigError("spike.sigma_noise must be finite and >= 0");
}

void AttackEnv::validate() const {
    cmos.validate();
    thermal.validate();
    spike.validate();
    if (!(dt > 0.0) || !(dt < thermal.time_constant()))
        throw ConfigError("attack.dt must be in (0, c_th*r_th)");
    if (n_traces == 0)
        throw ConfigError("attack.n_traces must be >= 1");
}

double spike_amplitude(const RegisterSnapshot &snap, ThermalState th,
                       const ThermalParams &tp, const SpikeParams &sp,
                       Rng &rng) {
    if (th.t < tp.t_amb)
        throw DomainError("spike_amplitude: temperature below ambient");
    const double v = sp.beta0 +
                     sp.beta_ctx * static_cast<double>(snap.total_hwt()) +
                     sp.beta_res * (th.t - tp.t_amb);
    return rng.normal(v, sp.sigma_noise);
}

Trace synthesize_trace(std::span<const double> pre_power, double spike_v,
                       double dt, std::size_t samples_per_step,
                       const SpikeParams &sp, Rng &rng,
                       const TraceShape &shape) {
    if (samples_per_step == 0)
        throw DomainError("synthesize_trace: samples_per_step must be >= 1");
    if (!(dt > 0.0))
        throw DomainError("synthesize_trace: dt must be > 0");

    Trace trace;
    trace.dt_s = dt / static_cast<double>(samples_per_step);
    trace.samples.reserve(pre_power.size() * samples_per_step + 1 +
                          shape.floor_samples);
    for (double p : pre_power) {
        const double level = shape.volts_per_watt * p;
        for (std::size_t k = 0; k < samples_per_step; ++k)
            trace.samples.push_back(rng.normal(level, sp.sigma_noise));
    }
    trace.samples.push_back(spike_v);
    trace.samples.insert(trace.samples.end(), shape.floor_samples, 0.0);
    return trace;
}

Victim microbench_victim(const MicrobenchSpec &spec) {
    validate(spec);
    return Victim{[spec](Rng &) { return execute(spec); }, true};
}

StreamSeeds StreamSeeds::from_master(std::uint64_t master) noexcept {
    return {derive_seed(master, {tag("victim")}),
            derive_seed(master, {tag("noise")})};
}

std::vector<PeakSample> run_experiment(const Victim &victim,
                                       std::size_t n_traces,
                                       StreamSeeds seeds, const AttackEnv &env,
                                       std::string_view label) {
    if (n_traces == 0)
        throw DomainError("run_experiment: n_traces must be >= 1");
    if (!victim.run)
        throw DomainError("run_experiment: empty victim");

    std::vector<PeakSample> peaks(n_traces);
    const std::string tag_text(label);
    const double t0 = env.thermal.t_amb;

    auto measure = [&](const VictimOutput &out, std::size_t i,
                       ThermalState th) {
        Rng noise(derive_seed(seeds.noise, {i}));
        peaks[i] = PeakSample{
            spike_amplitude(out.snapshot, th, env.thermal, env.spike, noise),
            tag_text, i};
    };

    if (victim.deterministic) {
        Rng unused(seeds.victim);
        const VictimOutput out = victim.run(unused);
        const ThermalState th = simulate_thermal_final(
            out.activity, env.cmos, env.thermal, env.dt, t0);
        parallel_for(n_traces, env.workers,
                     [&](std::size_t i) { measure(out, i, th); });
        return peaks;
    }

    parallel_for(n_traces, env.workers, [&](std::size_t i) {
        Rng stream(derive_seed(seeds.victim, {i}));
        const VictimOutput out = victim.run(stream);
        const ThermalState th = simulate_thermal_final(
            out.activity, env.cmos, env.thermal, env.dt, t0);
        measure(out, i, th);
    });
    return peaks;
}

} // namespace spikelab
