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

// Behavioral model of SIKE decapsulation under crafted ciphertexts. The
// Montgomery three-point ladder is reduced to one group of intermediate
// words per round. A crafted ciphertext aimed at bit t, with the correct
// key prefix and the correct guess for bit t, drives the ladder into
// all-zero intermediates from round t+1 onward when k[t] != k[t-1]; the
// zeros then persist through the post-ladder isogeny phase.

#include "spikelab/microbench.hpp"
#include "spikelab/power_model.hpp"
#include "spikelab/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spikelab::sike {

/// Secret key bits in ladder order, each 0 or 1.
struct Key {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }

    /// Throws DomainError if fewer than 2 bits or a bit is not 0/1.
    void validate() const;

    friend bool operator==(const Key &, const Key &) = default;
};

/// Uniform bits 1..L-1; bit 0 is fixed to 0, the recovery convention.
Key random_key(std::size_t length, Rng &rng);

/// Hex digits, most significant bit of the first digit is bit 0.
Key parse_key_hex(std::string_view hex);
std::string to_hex(const Key &key);
/// "0101..." form.
std::string to_bit_string(std::span<const std::uint8_t> bits);

struct CraftedCiphertext {
    std::size_t target_bit = 1;
    std::vector<std::uint8_t> assumed_prefix; ///< bits 0..target_bit-1
    std::uint8_t guessed_bit = 0;

    friend bool operator==(const CraftedCiphertext &,
                           const CraftedCiphertext &) = default;
};

/// Packages bits 0..t-1 of `prefix_with_guess` as the assumed prefix and
/// bit t as the guess. Throws DomainError for t == 0 (bit 0 cannot be
/// targeted) or when fewer than t+1 bits are given.
CraftedCiphertext generate_ciphertext(std::span<const std::uint8_t> prefix_with_guess,
                                      std::size_t t);

/// True when the ciphertext triggers anomalous zeros on this key.
bool triggers_anomaly(const Key &true_key, const CraftedCiphertext &c);

inline constexpr std::size_t kWordsPerRound = 8;

struct DecapsulationShape {
    std::size_t rounds = 0;             ///< ladder rounds, >= target_bit + 2
    std::size_t iterations = 1;         ///< back-to-back decapsulations
    std::size_t post_ladder_rounds = 0; ///< isogeny/j-invariant steps
    /// true: registers are zeroed at the switch under the anomaly (switch
    /// right after the ladder). false: the switch follows the whole
    /// decapsulation and the registers hold unrelated random data.
    bool anomaly_snapshot = true;
};

struct DecapsulationRun {
    ActivityProfile activity;
    RegisterSnapshot snapshot;
    bool anomalous = false;
};

/// Throws DomainError on a shape that violates the preconditions.
DecapsulationRun decapsulate_profile(const Key &true_key,
                                     const CraftedCiphertext &c,
                                     const DecapsulationShape &shape, Rng &rng);

inline DecapsulationRun decapsulate_profile(const Key &true_key,
                                            const CraftedCiphertext &c,
                                            std::size_t rounds,
                                            std::size_t iterations, Rng &rng) {
    return decapsulate_profile(true_key, c,
                               DecapsulationShape{rounds, iterations, 0, true},
                               rng);
}

} // namespace spikelab::sike
