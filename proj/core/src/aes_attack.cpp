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

#include "spikelab/aes_attack.hpp"

#include "spikelab/acquisition.hpp"
#include "spikelab/errors.hpp"
#include "spikelab/microbench.hpp"
#include "spikelab/parallel.hpp"

#include <algorithm>
#include <numeric>

namespace spikelab {

namespace {

// Registers at the sleep call hold loop bookkeeping, identical for every
// guess.
const RegisterSnapshot kLoopSnapshot = RegisterSnapshot::filled(encode_hwt(32));

unsigned block_hd(const aes::Block &a, const aes::Block &b) {
    unsigned n = 0;
    for (std::size_t i = 0; i < 16; ++i)
        n += hamming_distance(a[i], b[i]);
    return n;
}

Victim repeated_plaintext(const aes::Block &pt, const aes::RoundKeys &rk,
                          std::size_t encryptions) {
    const auto profile = aes::final_round_profile(pt, rk);
    return Victim{[profile, encryptions](Rng &) {
                      // Re-encrypting the same block flips nothing.
                      return VictimOutput{
                          ActivityProfile(encryptions, profile.activity),
                          kLoopSnapshot};
                  },
                  true};
}

AesByteResult attack_byte(const aes::RoundKeys &rk, const AttackEnv &env,
                          std::size_t target, std::size_t encryptions) {
    Rng base_rng(derive_seed(env.master_seed, {tag("aes-base"), target}));
    const aes::Block base = aes::random_block(base_rng);

    AesByteResult res;
    res.target = target;
    res.true_byte = rk.round10()[target];

    AttackEnv inner = env;
    inner.workers = 1;
    parallel_for(256, env.workers, [&](std::size_t guess) {
        const auto g = static_cast<std::uint8_t>(guess);
        const auto pt = aes::plaintext_for_guess(base, target, g, rk);
        const StreamSeeds seeds{
            derive_seed(env.master_seed, {tag("aes-victim"), target, guess}),
            derive_seed(env.master_seed, {tag("aes-noise"), target, guess})};
        const auto peaks = run_experiment(repeated_plaintext(pt, rk, encryptions),
                                          env.n_traces, seeds, inner);
        res.means[guess] = mean_peak(peaks);
    });

    std::array<std::size_t, 256> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return res.means[a] < res.means[b];
    });
    res.chosen = static_cast<std::uint8_t>(order[0]);
    res.margin = res.means[order[1]] - res.means[order[0]];
    res.rank_of_true = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), res.true_byte) - order.begin());

    std::array<double, 9> sums{};
    std::array<std::size_t, 9> counts{};
    for (std::size_t g = 0; g < 256; ++g) {
        const unsigned h = hamming_weight(g ^ res.true_byte);
        sums[h] += res.means[g];
        counts[h]++;
    }
    const double total = std::accumulate(sums.begin(), sums.end(), 0.0);
    for (std::size_t h = 0; h < 9; ++h) {
        res.hwt_class_means[h] = sums[h] / static_cast<double>(counts[h]);
        const double others =
            (total - sums[h]) / static_cast<double>(256 - counts[h]);
        res.hwt_class_diff[h] = res.hwt_class_means[h] - others;
    }
    return res;
}

} // namespace

ActivityProfile stream_activity(std::span<const aes::FinalRoundProfile> rounds) {
    ActivityProfile out;
    out.reserve(rounds.size());
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        ActivitySample s = rounds[i].activity;
        if (i > 0)
            s.hd_bits = block_hd(rounds[i].subbytes_out, rounds[i - 1].subbytes_out) +
                        block_hd(rounds[i].shiftrows_out, rounds[i - 1].shiftrows_out);
        out.push_back(s);
    }
    return out;
}

AesAttackReport aes_attack(const aes::Key &true_key, const AttackEnv &env,
                           std::span<const std::size_t> targets,
                           std::size_t encryptions_per_trace) {
    if (encryptions_per_trace == 0)
        throw DomainError("encryptions_per_trace must be >= 1");
    for (auto t : targets)
        if (t >= 16)
            throw DomainError("target byte must be in 0..=15");

    const auto rk = aes::expand_key(true_key);
    AesAttackReport report;
    for (auto t : targets) {
        auto res = attack_byte(rk, env, t, encryptions_per_trace);
        report.round10[t] = res.chosen;
        report.correct_bytes += res.correct();
        report.traces_consumed += 256 * env.n_traces;
        report.bytes.push_back(res);
    }

    if (std::all_of(report.round10.begin(), report.round10.end(),
                    [](const auto &b) { return b.has_value(); })) {
        aes::Block k10;
        for (std::size_t i = 0; i < 16; ++i)
            k10[i] = *report.round10[i];
        report.master_key = aes::invert_key_schedule(k10);
    }
    return report;
}

Level1Result aes_level1(const aes::Key &true_key, const AttackEnv &env,
                        std::size_t encryptions_per_trace) {
    if (encryptions_per_trace == 0)
        throw DomainError("encryptions_per_trace must be >= 1");

    // The last ciphertext column; each position is fed by one SubBytes
    // output through ShiftRows.
    static constexpr std::array<std::size_t, 4> kPositions = {12, 13, 14, 15};
    const auto rk = aes::expand_key(true_key);
    const auto &k10 = rk.round10();

    Rng base_rng(derive_seed(env.master_seed, {tag("level1-base")}));
    const aes::Block base = aes::random_block(base_rng);

    auto forced = [&](std::uint8_t value) {
        aes::Block c = base;
        for (auto p : kPositions)
            c[p] = value ^ k10[p];
        return aes::decrypt(c, rk);
    };

    Level1Result out;
    const std::size_t n = encryptions_per_trace;
    out.zeros = run_experiment(repeated_plaintext(forced(0x00), rk, n),
                               env.n_traces, derive_seed(env.master_seed, {tag("level1-zeros")}),
                               env, "four-zeros");
    out.ones = run_experiment(repeated_plaintext(forced(0xff), rk, n),
                              env.n_traces, derive_seed(env.master_seed, {tag("level1-ones")}),
                              env, "four-ones");

    Victim random_victim{[&rk, &base, n](Rng &rng) {
                             std::vector<aes::FinalRoundProfile> rounds;
                             rounds.reserve(n);
                             for (std::size_t e = 0; e < n; ++e) {
                                 aes::Block c = base;
                                 for (auto p : kPositions)
                                     c[p] = rng.byte();
                                 rounds.push_back(aes::final_round_profile(
                                     aes::decrypt(c, rk), rk));
                             }
                             return VictimOutput{stream_activity(rounds),
                                                 kLoopSnapshot};
                         },
                         false};
    out.random = run_experiment(random_victim, env.n_traces,
                                derive_seed(env.master_seed, {tag("level1-random")}),
                                env, "random");

    out.sep_zeros = separation(out.random, out.zeros);
    out.sep_ones = separation(out.random, out.ones);
    return out;
}

std::vector<NoiseSweepRow> aes_noise_sweep(const aes::Key &true_key,
                                           const AttackEnv &env,
                                           std::span<const std::size_t> targets,
                                           std::size_t encryptions_per_trace,
                                           std::span<const double> multipliers) {
    std::vector<NoiseSweepRow> rows;
    for (double m : multipliers) {
        AttackEnv e = env;
        e.spike.sigma_noise = m * env.spike.sigma_noise;
        const auto report = aes_attack(true_key, e, targets, encryptions_per_trace);
        NoiseSweepRow row;
        row.sigma_noise = e.spike.sigma_noise;
        row.targets = targets.size();
        row.correct = report.correct_bytes;
        for (const auto &b : report.bytes)
            row.worst_rank = std::max(row.worst_rank, b.rank_of_true);
        rows.push_back(row);
    }
    return rows;
}

} // namespace spikelab
