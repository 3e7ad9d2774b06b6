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

// Final-round AES-128 key recovery from the residual power left by a long
// run of encryptions of a chosen plaintext.

#include "spikelab/aes.hpp"
#include "spikelab/spike_synth.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spikelab {

/// Per-encryption activity of a stream of final rounds. The HD term counts
/// bits that flip in the SubBytes and ShiftRows outputs between consecutive
/// encryptions; the first encryption has none.
ActivityProfile stream_activity(std::span<const aes::FinalRoundProfile> rounds);

struct AesByteResult {
    std::size_t target = 0;
    std::array<double, 256> means{}; ///< mean peak per guess, V
    std::uint8_t chosen = 0;         ///< argmin of means
    double margin = 0.0;             ///< second-lowest minus lowest mean
    std::uint8_t true_byte = 0;      ///< evaluation only
    std::size_t rank_of_true = 0;    ///< 0 = lowest mean
    /// Mean over guesses grouped by HWT(guess ^ true round-10 byte), and
    /// each group's mean minus the mean of all other guesses.
    std::array<double, 9> hwt_class_means{};
    std::array<double, 9> hwt_class_diff{};

    bool correct() const noexcept { return chosen == true_byte; }
};

struct AesAttackReport {
    std::vector<AesByteResult> bytes;
    std::array<std::optional<std::uint8_t>, 16> round10;
    std::optional<aes::Key> master_key; ///< set when all 16 bytes chosen
    std::size_t correct_bytes = 0;
    std::size_t traces_consumed = 0;

    /// log2 of the remaining brute-force space, 8 per unrecovered byte.
    unsigned residual_log2() const noexcept {
        return 8u * static_cast<unsigned>(16 - correct_bytes);
    }
};

/// For every target byte and guess, encrypts the chosen plaintext
/// encryptions_per_trace times, measures env.n_traces spikes and picks the
/// guess with the lowest mean. One random base ciphertext per target byte
/// is shared by all 256 guesses.
AesAttackReport aes_attack(const aes::Key &true_key, const AttackEnv &env,
                           std::span<const std::size_t> targets,
                           std::size_t encryptions_per_trace);

/// Four final-round SubBytes outputs forced to 0x00, 0xFF, or fresh random
/// values each encryption; the other twelve bytes held fixed.
struct Level1Result {
    std::vector<PeakSample> random, zeros, ones;
    double sep_zeros = 0.0; ///< mean(random) - mean(zeros)
    double sep_ones = 0.0;  ///< mean(random) - mean(ones)
};

Level1Result aes_level1(const aes::Key &true_key, const AttackEnv &env,
                        std::size_t encryptions_per_trace);

struct NoiseSweepRow {
    double sigma_noise = 0.0;
    std::size_t targets = 0;
    std::size_t correct = 0;
    std::size_t worst_rank = 0;
};

/// Repeats aes_attack at sigma_noise = m * env.spike.sigma_noise for every
/// multiplier m.
std::vector<NoiseSweepRow> aes_noise_sweep(const aes::Key &true_key,
                                           const AttackEnv &env,
                                           std::span<const std::size_t> targets,
                                           std::size_t encryptions_per_trace,
                                           std::span<const double> multipliers);

} // namespace spikelab
