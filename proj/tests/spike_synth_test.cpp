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

#include "spikelab/acquisition.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/spike_synth.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace spikelab {
namespace {

SpikeParams noiseless() {
    SpikeParams sp;
    sp.sigma_noise = 0.0;
    return sp;
}

TEST(SpikeAmplitude, BaselineOnly) {
    Rng rng(1);
    const ThermalParams tp;
    EXPECT_EQ(spike_amplitude(RegisterSnapshot{}, {tp.t_amb}, tp, noiseless(), rng),
              noiseless().beta0);
}

TEST(SpikeAmplitude, HandValue) {
    SpikeParams sp = noiseless();
    sp.beta0 = 0.1;
    sp.beta_ctx = 1e-4;
    Rng rng(1);
    const ThermalParams tp;
    EXPECT_DOUBLE_EQ(spike_amplitude(RegisterSnapshot::filled(encode_hwt(16)),
                                     {tp.t_amb}, tp, sp, rng),
                     0.1 + 1e-4 * 432);
}

TEST(SpikeAmplitude, RegisterAndResidualTermsAreAdditive) {
    const SpikeParams sp = noiseless();
    const ThermalParams tp;
    Rng rng(1);
    const auto full = RegisterSnapshot::filled(~0ULL);
    EXPECT_GT(spike_amplitude(full, {tp.t_amb}, tp, sp, rng),
              spike_amplitude(RegisterSnapshot{}, {tp.t_amb}, tp, sp, rng));
    const double warm = tp.t_amb + 0.001;
    EXPECT_EQ(spike_amplitude(RegisterSnapshot{}, {warm}, tp, sp, rng),
              sp.beta0 + sp.beta_res * (warm - tp.t_amb));
    EXPECT_THROW(spike_amplitude(full, {tp.t_amb - 1}, tp, sp, rng), DomainError);
}

TEST(SpikeParams, DefaultSigmaIsHalfTheRegisterRange) {
    const SpikeParams sp;
    EXPECT_DOUBLE_EQ(sp.sigma_noise, 0.5 * 27 * 64 * sp.beta_ctx);
    EXPECT_DOUBLE_EQ(SpikeParams::default_sigma(sp.beta_ctx), sp.sigma_noise);
}

TEST(SynthesizeTrace, EmptySeriesSpikeIsMax) {
    Rng rng(1);
    const auto t = synthesize_trace({}, 0.2, 1e-3, 10, noiseless(), rng);
    const auto p = find_peak(t);
    EXPECT_EQ(p.value, 0.2);
    EXPECT_EQ(p.index, 0u);
}

TEST(SynthesizeTrace, DoublingSpikeDoublesHeightAboveFloor) {
    const SpikeParams sp = noiseless();
    const std::vector<double> power(5, 0.01);
    Rng rng(1);
    const auto a = synthesize_trace(power, 0.2, 1e-3, 4, sp, rng);
    const auto b = synthesize_trace(power, 0.4, 1e-3, 4, sp, rng);
    const double floor = a.samples.back();
    EXPECT_EQ(floor, 0.0);
    EXPECT_DOUBLE_EQ(find_peak(b).value - floor, 2 * (find_peak(a).value - floor));
    EXPECT_EQ(a.samples.size(), 5u * 4 + 1 + TraceShape{}.floor_samples);
    EXPECT_DOUBLE_EQ(a.dt_s, 1e-3 / 4);
}

TEST(SynthesizeTrace, SmoothedPeakLocatesSpike) {
    const SpikeParams sp; // default noise
    Rng rng(7);
    const std::vector<double> power(200, 0.05);
    const std::size_t per_step = 10;
    const double body = 0.05;
    // A spike five times the body, held for a few samples the way a real
    // capture shows it, so smoothing keeps it above the body.
    auto t = synthesize_trace(power, 5 * body, 1e-3, per_step, sp, rng);
    const std::size_t spike_at = power.size() * per_step;
    for (std::size_t k = 1; k <= 9; ++k)
        t.samples[spike_at + k] = 5 * body;
    const auto p = find_peak(smooth(t, 10));
    EXPECT_LE(p.index > spike_at ? p.index - spike_at : spike_at - p.index, 10u);
}

TEST(RunExperiment, SingleNoiselessTraceIsAnalytic) {
    AttackEnv env;
    env.spike.sigma_noise = 0;
    const HwtLoop spec{32, 16, 100};
    const auto peaks = run_experiment(microbench_victim(spec), 1, 9, env, "x");
    ASSERT_EQ(peaks.size(), 1u);
    const auto out = execute(spec);
    const auto th = simulate_thermal_final(out.activity, env.cmos, env.thermal, env.dt,
                                           env.thermal.t_amb);
    const double expected = env.spike.beta0 +
                            env.spike.beta_ctx * static_cast<double>(out.snapshot.total_hwt()) +
                            env.spike.beta_res * (th.t - env.thermal.t_amb);
    EXPECT_DOUBLE_EQ(peaks[0].value, expected);
    EXPECT_EQ(peaks[0].label, "x");
    EXPECT_EQ(peaks[0].seed_index, 0u);
}

TEST(RunExperiment, SeedDeterminesOutputNotWorkers) {
    AttackEnv env;
    const auto v = microbench_victim(HdLoop{10, 32, 100});
    env.workers = 1;
    const auto a = run_experiment(v, 500, 3, env);
    env.workers = 8;
    const auto b = run_experiment(v, 500, 3, env);
    EXPECT_EQ(a, b);
    EXPECT_NE(run_experiment(v, 500, 4, env), a);
}

TEST(RunExperiment, RandomVictimReproducible) {
    AttackEnv env;
    Victim v{[](Rng &rng) {
                 VictimOutput out;
                 out.activity.assign(50, ActivitySample{rng.word() % 1000, 0});
                 out.snapshot = RegisterSnapshot::filled(rng.word());
                 return out;
             },
             false};
    env.workers = 1;
    const auto a = run_experiment(v, 200, 5, env);
    env.workers = 0;
    EXPECT_EQ(run_experiment(v, 200, 5, env), a);
}

TEST(RunExperiment, MeansIncreaseWithRegisterHwt) {
    AttackEnv env;
    double prev = -1;
    for (unsigned h : {0u, 16u, 32u, 48u, 64u}) {
        const auto peaks = run_experiment(microbench_victim(HwtLoop{0, h, 100}), 1000, 11, env);
        const double m = mean_peak(peaks);
        EXPECT_GT(m, prev) << h;
        prev = m;
    }
}

TEST(RunExperiment, RejectsEmptyInputs) {
    AttackEnv env;
    EXPECT_THROW(run_experiment(microbench_victim(ConstLoop{1, 0}), 0, 1, env), DomainError);
    EXPECT_THROW(run_experiment(Victim{}, 1, 1, env), DomainError);
}

} // namespace
} // namespace spikelab
