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

// Byte-oriented AES-128 with hooks into the final round: SubBytes and
// ShiftRows outputs of round 10, and inversion of the key schedule from the
// round-10 key.

#include "spikelab/power_model.hpp"
#include "spikelab/rng.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace spikelab::aes {

using Block = std::array<std::uint8_t, 16>;
using Key = Block;

/// Round key r at index r; keys[0] is the master key.
struct RoundKeys {
    std::array<Block, 11> keys{};

    const Block &round10() const noexcept { return keys[10]; }
};

extern const std::array<std::uint8_t, 256> kSbox;
extern const std::array<std::uint8_t, 256> kInvSbox;

RoundKeys expand_key(const Key &key);

/// Runs the schedule backward from the last round key.
Key invert_key_schedule(const Block &round10_key);

Block encrypt(const Block &pt, const RoundKeys &rk);
Block decrypt(const Block &ct, const RoundKeys &rk);
inline Block encrypt(const Block &pt, const Key &key) {
    return encrypt(pt, expand_key(key));
}
inline Block decrypt(const Block &ct, const Key &key) {
    return decrypt(ct, expand_key(key));
}

/// Index of the SubBytes output byte that ShiftRows moves to position pos.
/// State bytes are column-major: index = row + 4 * column.
constexpr std::size_t shiftrows_source(std::size_t pos) noexcept {
    const std::size_t row = pos % 4;
    const std::size_t col = pos / 4;
    return row + 4 * ((col + row) % 4);
}

struct FinalRoundProfile {
    Block subbytes_out{};
    Block shiftrows_out{};
    Block ciphertext{};
    /// One sample for the round: HWT of SubBytes and ShiftRows outputs.
    ActivitySample activity;
};

FinalRoundProfile final_round_profile(const Block &pt, const RoundKeys &rk);
inline FinalRoundProfile final_round_profile(const Key &key, const Block &pt) {
    return final_round_profile(pt, expand_key(key));
}

/// Chosen-plaintext generator: takes a base ciphertext, forces byte
/// `target` to `guess` and decrypts. encrypt(result)[target] == guess.
Block plaintext_for_guess(Block base_ciphertext, std::size_t target,
                          std::uint8_t guess, const RoundKeys &rk);

/// Same with a fresh random base ciphertext from `rng`.
Block generate_plaintext(const RoundKeys &rk, std::size_t target,
                         std::uint8_t guess, Rng &rng);

Block random_block(Rng &rng);

/// Lower-case hex, 32 characters.
std::string to_hex(std::span<const std::uint8_t> bytes);

/// Parses exactly 32 hex digits. Throws DomainError otherwise.
Block parse_hex(std::string_view text);

} // namespace spikelab::aes
