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

#include "spikelab/sike_attack.hpp"

#include "spikelab/acquisition.hpp"
#include "spikelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace spikelab {

namespace {

constexpr std::uint64_t kHypothesis1 = 1;
constexpr std::uint64_t kHypothesis2 = 2;

struct BitProbe {
    const sike::Key &truth;
    const sike::DecapsulationShape &shape;
    const AttackEnv &env;
    std::uint64_t stage;
};

// Mean spike for the crafted ciphertext (prefix, guess) aimed at bit t.
// Victim intermediates are shared by both hypotheses of the same bit;
// measurement noise is not.
double measure(const BitProbe &probe, std::vector<std::uint8_t> prefix,
               std::size_t t, std::uint8_t guess, std::uint64_t hypothesis) {
    prefix.resize(t);
    prefix.push_back(guess);
    const auto ct = sike::generate_ciphertext(prefix, t);

    Victim victim{[&probe, ct](Rng &rng) {
                      auto run = sike::decapsulate_profile(probe.truth, ct,
                                                           probe.shape, rng);
                      return VictimOutput{std::move(run.activity), run.snapshot};
                  },
                  false};
    const StreamSeeds seeds{
        derive_seed(probe.env.master_seed, {probe.stage, t, tag("victim")}),
        derive_seed(probe.env.master_seed,
                    {probe.stage, t, hypothesis, tag("noise")})};
    const auto peaks = run_experiment(victim, probe.env.n_traces, seeds, probe.env);
    return mean_peak(peaks);
}

// Noiseless mean of a decapsulation whose words all have their expected
// weight: 32 ones per word, 32 toggles between independent words.
double expected_poc_mean(const AttackEnv &env, std::size_t rounds,
                         std::size_t zero_from) {
    constexpr std::uint64_t kBits = 32 * sike::kWordsPerRound;
    ActivityProfile profile;
    for (std::size_t r = 0; r < rounds; ++r) {
        const bool zero = r >= zero_from;
        const bool first_zero = r == zero_from && r > 0;
        profile.push_back(zero ? ActivitySample{0, first_zero ? kBits : 0}
                               : ActivitySample{kBits, kBits});
    }
    const auto th = simulate_thermal_final(profile, env.cmos, env.thermal,
                                           env.dt, env.thermal.t_amb);
    RegisterSnapshot snap;
    if (zero_from >= rounds)
        snap = RegisterSnapshot::filled(encode_hwt(32));
    SpikeParams noiseless = env.spike;
    noiseless.sigma_noise = 0.0;
    Rng unused(0);
    return spike_amplitude(snap, th, env.thermal, noiseless, unused);
}

} // namespace

std::size_t SikeAttackReport::matching_bits(const sike::Key &truth) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < std::min(truth.size(), recovered_bits.size()); ++i)
        n += recovered_bits[i] == truth[i];
    return n;
}

sike::DecapsulationShape poc_shape(std::size_t key_bits) {
    return {key_bits + 1, 1, 0, true};
}

sike::DecapsulationShape residual_shape(std::size_t key_bits,
                                        std::size_t iterations) {
    return {key_bits + 1, iterations, key_bits + 1, false};
}

ClassBand poc_class_band(const AttackEnv &env, std::size_t key_bits) {
    if (key_bits < 2)
        throw DomainError("SIKE key needs at least 2 bits");
    const auto shape = poc_shape(key_bits);
    ClassBand band;
    band.clean_min = expected_poc_mean(env, shape.rounds, shape.rounds);
    band.anomalous_max = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 1; t < key_bits; ++t)
        band.anomalous_max = std::max(
            band.anomalous_max, expected_poc_mean(env, shape.rounds, t + 1));
    return band;
}

double poc_threshold(const AttackEnv &env, std::size_t key_bits) {
    const auto band = poc_class_band(env, key_bits);
    return 0.5 * (band.anomalous_max + band.clean_min);
}

SikeAttackReport sike_poc_attack(const sike::Key &true_key,
                                 const AttackEnv &env, double threshold) {
    true_key.validate();
    const auto band = poc_class_band(env, true_key.size());
    if (!(threshold > band.anomalous_max && threshold < band.clean_min))
        throw DomainError("threshold " + std::to_string(threshold) +
                          " V is outside the calibrated band (" +
                          std::to_string(band.anomalous_max) + ", " +
                          std::to_string(band.clean_min) + ") V");

    const auto shape = poc_shape(true_key.size());
    const BitProbe probe{true_key, shape, env, tag("sike-poc")};

    SikeAttackReport report;
    report.sep_limit = threshold;
    report.recovered_bits.assign(true_key.size(), 0);
    auto &k = report.recovered_bits;
    for (std::size_t t = 1; t < true_key.size(); ++t) {
        const std::uint8_t flip = k[t - 1] ^ 1;
        SikeBitMeans m;
        m.bit = t;
        m.mean_value_1 = measure(probe, k, t, flip, kHypothesis1);
        m.mean_value_2 = measure(probe, k, t, k[t - 1], kHypothesis2);
        k[t] = m.mean_value_1 < threshold ? flip : k[t - 1];
        m.recovered = k[t];
        report.per_bit.push_back(m);
        report.traces_consumed += 2 * env.n_traces;
    }
    return report;
}

SikeAttackReport sike_attack(const sike::Key &true_key, const AttackEnv &env,
                             double sep_limit, std::size_t iterations) {
    true_key.validate();
    if (iterations == 0)
        throw DomainError("iterations must be >= 1");
    if (!(sep_limit > 0.0))
        throw DomainError("sep_limit must be > 0");

    const auto shape = residual_shape(true_key.size(), iterations);
    const BitProbe probe{true_key, shape, env, tag("sike-attack")};

    SikeAttackReport report;
    report.sep_limit = sep_limit;
    report.recovered_bits.assign(true_key.size(), 0);
    auto &k = report.recovered_bits;
    for (std::size_t t = 1; t < true_key.size(); ++t) {
        const std::uint8_t flip = k[t - 1] ^ 1;
        SikeBitMeans m;
        m.bit = t;
        m.mean_value_1 = measure(probe, k, t, flip, kHypothesis1);
        m.mean_value_2 = measure(probe, k, t, k[t - 1], kHypothesis2);
        report.traces_consumed += 2 * env.n_traces;

        if (std::abs(m.mean_value_1 - m.mean_value_2) < sep_limit) {
            k[t] = k[t - 1];
        } else if (m.mean_value_2 - m.mean_value_1 >= sep_limit) {
            k[t] = flip;
        } else {
            throw InconsistencyError(
                "bit " + std::to_string(t) +
                ": hypothesis 2 reads lower than hypothesis 1 by at least "
                "SEP_LIMIT; the anomaly model excludes this, retry with a "
                "new seed or more traces");
        }
        m.recovered = k[t];
        report.per_bit.push_back(m);
    }
    return report;
}

double calibrate_sep_limit(const AttackEnv &env, const sike::Key &probe_key,
                           std::size_t iterations) {
    probe_key.validate();
    bool has_diff = false;
    bool has_equal = false;
    for (std::size_t t = 1; t < probe_key.size(); ++t)
        (probe_key[t] != probe_key[t - 1] ? has_diff : has_equal) = true;
    if (!has_diff || !has_equal)
        throw DomainError("probe key needs both a differing and an equal "
                          "adjacent bit pair");

    const auto shape = residual_shape(probe_key.size(), iterations);
    const BitProbe probe{probe_key, shape, env, tag("sike-calibrate")};

    double min_gap = std::numeric_limits<double>::infinity();
    double max_equal = 0.0;
    for (std::size_t t = 1; t < probe_key.size(); ++t) {
        const std::uint8_t prev = probe_key[t - 1];
        const double m1 = measure(probe, probe_key.bits, t, prev ^ 1, kHypothesis1);
        const double m2 = measure(probe, probe_key.bits, t, prev, kHypothesis2);
        if (probe_key[t] != prev)
            min_gap = std::min(min_gap, m2 - m1);
        else
            max_equal = std::max(max_equal, std::abs(m1 - m2));
    }

    const double limit = 0.5 * min_gap;
    if (!(limit > 0.0) || max_equal >= limit)
        throw InconsistencyError(
            "SEP_LIMIT calibration failed: smallest anomalous gap " +
            std::to_string(min_gap) + " V does not clear same-class spread " +
            std::to_string(max_equal) +
            " V; raise the trace count or the decapsulation iterations");
    return limit;
}

} // namespace spikelab
