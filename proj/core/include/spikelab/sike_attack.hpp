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

// Bit-by-bit SIKE key recovery from mean spike amplitudes.

#include "spikelab/sike_model.hpp"
#include "spikelab/spike_synth.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace spikelab {

struct SikeBitMeans {
    std::size_t bit = 0;
    double mean_value_1 = 0.0; ///< hypothesis K[t] = !K[t-1]
    double mean_value_2 = 0.0; ///< hypothesis K[t] = K[t-1]
    std::uint8_t recovered = 0;
};

struct SikeAttackReport {
    std::vector<std::uint8_t> recovered_bits;
    std::vector<SikeBitMeans> per_bit; ///< bits 1..L-1
    double sep_limit = 0.0;            ///< threshold of the threshold attack
    std::size_t traces_consumed = 0;

    std::size_t matching_bits(const sike::Key &truth) const;
    bool full_match(const sike::Key &truth) const {
        return matching_bits(truth) == truth.size();
    }
};

/// Switch right after the ladder; a single decapsulation per trace.
sike::DecapsulationShape poc_shape(std::size_t key_bits);

/// Switch after `iterations` full decapsulations (ladder plus isogeny
/// phase); registers carry no anomaly, only the residual signature does.
sike::DecapsulationShape residual_shape(std::size_t key_bits,
                                        std::size_t iterations);

/// Noiseless expected class means of the register-spike measurement.
struct ClassBand {
    double anomalous_max = 0.0; ///< highest anomalous mean over target bits
    double clean_min = 0.0;     ///< lowest non-anomalous mean
};

ClassBand poc_class_band(const AttackEnv &env, std::size_t key_bits);

/// Midpoint of poc_class_band.
double poc_threshold(const AttackEnv &env, std::size_t key_bits);

/// Threshold classification of each bit using the register-dominated
/// spike. Throws DomainError if the threshold is outside the band.
SikeAttackReport sike_poc_attack(const sike::Key &true_key,
                                 const AttackEnv &env, double threshold);

/// Sequential recovery comparing two crafted-ciphertext hypotheses per
/// bit against sep_limit. Throws InconsistencyError if hypothesis 2 ever
/// reads lower than hypothesis 1 by sep_limit or more.
SikeAttackReport sike_attack(const sike::Key &true_key, const AttackEnv &env,
                             double sep_limit, std::size_t iterations = 4);

/// Half the smallest anomalous/clean gap measured on a known probe key.
/// Throws DomainError if the probe has no differing or no equal adjacent
/// pair, InconsistencyError if the classes overlap at this noise level.
double calibrate_sep_limit(const AttackEnv &env, const sike::Key &probe_key,
                           std::size_t iterations = 4);

} // namespace spikelab
